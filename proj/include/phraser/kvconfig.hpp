// Key-value config files: one "key = value" per line, '#' starts a comment.
// Unknown keys are rejected so a typo cannot silently fall back to defaults.

#ifndef PHRASER_KVCONFIG_HPP
#define PHRASER_KVCONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

namespace phraser {

class KeyValueFile {
 public:
  static KeyValueFile parse(std::istream& input, const std::string& origin);
  static KeyValueFile parse_file(const std::string& path);

  bool has(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  // Throws DataError if any key was never read through a getter.
  void reject_unused() const;

 private:
  std::string origin_;
  std::map<std::string, std::string> values_;
  mutable std::map<std::string, bool> used_;
};

}  // namespace phraser

#endif  // PHRASER_KVCONFIG_HPP
