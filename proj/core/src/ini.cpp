#include "qrm/ini.hpp"

#include <cstdlib>
#include <sstream>

#include "qrm/io.hpp"

namespace qrm {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail_at(const std::string& name, int line,
                          const std::string& msg) {
  throw ConfigError(name + ":" + std::to_string(line) + ": " + msg);
}

} // namespace

IniFile IniFile::load(const std::string& path) {
  return parse(read_file(path), path);
}

IniFile IniFile::parse(const std::string& text, const std::string& name) {
  IniFile ini;
  ini.name_ = name;
  ini.text_ = text;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') fail_at(name, lineno, "unterminated section header");
      section = trim(t.substr(1, t.size() - 2));
      if (section.empty()) fail_at(name, lineno, "empty section name");
      ini.sections_[section]; // register even when empty
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      fail_at(name, lineno, "expected 'key = value'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) fail_at(name, lineno, "empty key");
    ini.sections_[section][key] = Entry{value, lineno}; // last one wins
  }
  return ini;
}

bool IniFile::has_section(const std::string& section) const {
  return sections_.count(section) != 0;
}

bool IniFile::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

const IniFile::Entry* IniFile::find(const std::string& section,
                                    const std::string& key) const {
  auto s = sections_.find(section);
  if (s == sections_.end()) return nullptr;
  auto k = s->second.find(key);
  if (k == s->second.end()) return nullptr;
  return &k->second;
}

void IniFile::fail_missing(const std::string& section,
                           const std::string& key) const {
  throw ConfigError(name_ + ": missing key '" + key + "' in section [" +
                    section + "]");
}

std::string IniFile::get_string(const std::string& section,
                                const std::string& key) const {
  const Entry* e = find(section, key);
  if (!e) fail_missing(section, key);
  return e->value;
}

std::string IniFile::get_string(const std::string& section,
                                const std::string& key,
                                const std::string& fallback) const {
  const Entry* e = find(section, key);
  return e ? e->value : fallback;
}

namespace {

double parse_double(const IniFile& ini, const std::string& section,
                    const std::string& key, const std::string& value,
                    int line) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (!end || end == value.c_str() || *end != '\0')
    fail_at(ini.name(), line,
            "key '" + key + "' in [" + section + "]: not a number: '" + value +
                "'");
  return v;
}

long long parse_ll(const IniFile& ini, const std::string& section,
                   const std::string& key, const std::string& value,
                   int line) {
  char* end = nullptr;
  const long long v = std::strtoll(value.c_str(), &end, 10);
  if (!end || end == value.c_str() || *end != '\0')
    fail_at(ini.name(), line,
            "key '" + key + "' in [" + section + "]: not an integer: '" +
                value + "'");
  return v;
}

} // namespace

double IniFile::get_double(const std::string& section,
                           const std::string& key) const {
  const Entry* e = find(section, key);
  if (!e) fail_missing(section, key);
  return parse_double(*this, section, key, e->value, e->line);
}

double IniFile::get_double(const std::string& section, const std::string& key,
                           double fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  return parse_double(*this, section, key, e->value, e->line);
}

int IniFile::get_int(const std::string& section, const std::string& key) const {
  const Entry* e = find(section, key);
  if (!e) fail_missing(section, key);
  return static_cast<int>(parse_ll(*this, section, key, e->value, e->line));
}

int IniFile::get_int(const std::string& section, const std::string& key,
                     int fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  return static_cast<int>(parse_ll(*this, section, key, e->value, e->line));
}

std::uint64_t IniFile::get_u64(const std::string& section,
                               const std::string& key,
                               std::uint64_t fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(e->value.c_str(), &end, 10);
  if (!end || end == e->value.c_str() || *end != '\0')
    fail_at(name_, e->line,
            "key '" + key + "' in [" + section + "]: not an integer: '" +
                e->value + "'");
  return static_cast<std::uint64_t>(v);
}

std::vector<int> IniFile::get_int_list(const std::string& section,
                                       const std::string& key) const {
  const Entry* e = find(section, key);
  if (!e) fail_missing(section, key);
  std::vector<int> out;
  std::istringstream ss(e->value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = trim(item);
    if (t.empty())
      fail_at(name_, e->line, "key '" + key + "': empty list element");
    out.push_back(static_cast<int>(parse_ll(*this, section, key, t, e->line)));
  }
  if (out.empty()) fail_at(name_, e->line, "key '" + key + "': empty list");
  return out;
}

std::vector<double> IniFile::get_double_list(const std::string& section,
                                             const std::string& key) const {
  const Entry* e = find(section, key);
  if (!e) fail_missing(section, key);
  std::vector<double> out;
  std::istringstream ss(e->value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = trim(item);
    if (t.empty())
      fail_at(name_, e->line, "key '" + key + "': empty list element");
    out.push_back(parse_double(*this, section, key, t, e->line));
  }
  if (out.empty()) fail_at(name_, e->line, "key '" + key + "': empty list");
  return out;
}

} // namespace qrm
