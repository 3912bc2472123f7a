#include "phraser/kvconfig.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>

#include "phraser/error.hpp"

namespace phraser {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

}  // namespace

KeyValueFile KeyValueFile::parse(std::istream& input, const std::string& origin) {
  KeyValueFile config;
  config.origin_ = origin;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(input, line)) {
    ++line_number;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      std::ostringstream msg;
      msg << origin << " line " << line_number << ": expected 'key = value'";
      throw DataError(msg.str());
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      std::ostringstream msg;
      msg << origin << " line " << line_number << ": empty key";
      throw DataError(msg.str());
    }
    if (config.values_.count(key) != 0) {
      std::ostringstream msg;
      msg << origin << " line " << line_number << ": duplicate key '" << key << "'";
      throw DataError(msg.str());
    }
    config.values_[key] = value;
    config.used_[key] = false;
  }
  return config;
}

KeyValueFile KeyValueFile::parse_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw DataError("cannot open config file: " + path);
  return parse(file, path);
}

bool KeyValueFile::has(const std::string& key) const { return values_.count(key) != 0; }

std::string KeyValueFile::get_string(const std::string& key,
                                     const std::string& fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  used_[key] = true;
  return it->second;
}

double KeyValueFile::get_double(const std::string& key, double fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  used_[key] = true;
  try {
    std::size_t consumed = 0;
    double value = std::stod(it->second, &consumed);
    if (consumed != it->second.size()) throw std::invalid_argument(it->second);
    return value;
  } catch (const std::exception&) {
    throw DataError(origin_ + ": key '" + key + "' is not a number: " + it->second);
  }
}

std::int64_t KeyValueFile::get_int(const std::string& key, std::int64_t fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  used_[key] = true;
  try {
    std::size_t consumed = 0;
    std::int64_t value = std::stoll(it->second, &consumed);
    if (consumed != it->second.size()) throw std::invalid_argument(it->second);
    return value;
  } catch (const std::exception&) {
    throw DataError(origin_ + ": key '" + key + "' is not an integer: " + it->second);
  }
}

std::uint64_t KeyValueFile::get_uint(const std::string& key,
                                     std::uint64_t fallback) const {
  std::int64_t value = get_int(key, static_cast<std::int64_t>(fallback));
  if (value < 0) {
    throw DataError(origin_ + ": key '" + key + "' must be non-negative");
  }
  return static_cast<std::uint64_t>(value);
}

bool KeyValueFile::get_bool(const std::string& key, bool fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  used_[key] = true;
  if (it->second == "true" || it->second == "1" || it->second == "yes") return true;
  if (it->second == "false" || it->second == "0" || it->second == "no") return false;
  throw DataError(origin_ + ": key '" + key + "' is not a boolean: " + it->second);
}

void KeyValueFile::reject_unused() const {
  for (const auto& [key, used] : used_) {
    if (!used) {
      throw DataError(origin_ + ": unknown key '" + key + "'");
    }
  }
}

}  // namespace phraser
