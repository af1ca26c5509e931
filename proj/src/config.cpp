#include "czlab/config.hpp"

#include <fstream>
#include <sstream>

#include "czlab/error.hpp"
#include "czlab/grid.hpp"

namespace czlab {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string join(const std::vector<std::string>& toks) {
  std::string out;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (i) out += ' ';
    out += toks[i];
  }
  return out;
}

}  // namespace

Config Config::from_text(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line, section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t comment = line.find_first_of(";#");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        fail(errc::config_error, "config line " + std::to_string(lineno) + ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail(errc::config_error, "config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    if (key.empty() || section.empty())
      fail(errc::config_error, "config line " + std::to_string(lineno) + ": key outside section");
    cfg.values_[section + "." + key] = tokens(line.substr(eq + 1));
  }
  return cfg;
}

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::config_error, "cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

void Config::set(const std::string& dotted_key, const std::string& value) {
  if (dotted_key.find('.') == std::string::npos)
    fail(errc::config_error, "--set expects section.key=value, got key: " + dotted_key);
  values_[dotted_key] = tokens(value);
}

const std::vector<std::string>* Config::find(const std::string& section,
                                             const std::string& key) const {
  auto it = values_.find(section + "." + key);
  return it == values_.end() ? nullptr : &it->second;
}

void Config::record(const std::string& section, const std::string& key,
                    const std::string& value) const {
  resolved_[section + "." + key] = value;
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
  const auto* v = find(section, key);
  double out = fallback;
  if (v) {
    if (v->size() != 1) fail(errc::config_error, section + "." + key + " expects one number");
    try {
      out = std::stod((*v)[0]);
    } catch (const std::exception&) {
      fail(errc::config_error, section + "." + key + " is not a number");
    }
  }
  record(section, key, format_g17(out));
  return out;
}

long Config::get_long(const std::string& section, const std::string& key, long fallback) const {
  const auto* v = find(section, key);
  long out = fallback;
  if (v) {
    if (v->size() != 1) fail(errc::config_error, section + "." + key + " expects one integer");
    try {
      out = std::stol((*v)[0]);
    } catch (const std::exception&) {
      fail(errc::config_error, section + "." + key + " is not an integer");
    }
  }
  record(section, key, std::to_string(out));
  return out;
}

bool Config::get_bool(const std::string& section, const std::string& key, bool fallback) const {
  const auto* v = find(section, key);
  bool out = fallback;
  if (v) {
    if (v->size() != 1 || ((*v)[0] != "true" && (*v)[0] != "false"))
      fail(errc::config_error, section + "." + key + " expects true or false");
    out = (*v)[0] == "true";
  }
  record(section, key, out ? "true" : "false");
  return out;
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
  const auto* v = find(section, key);
  std::string out = v ? join(*v) : fallback;
  record(section, key, out);
  return out;
}

std::vector<double> Config::get_doubles(const std::string& section, const std::string& key,
                                        const std::vector<double>& fallback) const {
  const auto* v = find(section, key);
  std::vector<double> out;
  if (v) {
    for (const std::string& tok : *v) {
      try {
        out.push_back(std::stod(tok));
      } catch (const std::exception&) {
        fail(errc::config_error, section + "." + key + " has a non-numeric entry");
      }
    }
  } else {
    out = fallback;
  }
  std::string text;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i) text += ' ';
    text += format_g17(out[i]);
  }
  record(section, key, text);
  return out;
}

std::vector<std::string> Config::get_strings(const std::string& section, const std::string& key,
                                             const std::vector<std::string>& fallback) const {
  const auto* v = find(section, key);
  std::vector<std::string> out = v ? *v : fallback;
  record(section, key, join(out));
  return out;
}

std::string Config::resolved_dump() const {
  std::string out;
  std::string current_section;
  for (const auto& [dotted, value] : resolved_) {
    std::size_t dot = dotted.find('.');
    std::string section = dotted.substr(0, dot);
    if (section != current_section) {
      if (!current_section.empty()) out += '\n';
      out += "[" + section + "]\n";
      current_section = section;
    }
    out += dotted.substr(dot + 1) + " = " + value + "\n";
  }
  return out;
}

std::string Config::resolved_hash() const {
  std::string dump = resolved_dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace czlab
