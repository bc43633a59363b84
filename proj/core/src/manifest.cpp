#include "qcd/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "qcd/csv_format.hpp"

namespace qcd {

namespace {
std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}
}  // namespace

void Manifest::set(std::string_view key, std::string value) {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [key](const auto& e) { return e.first == key; });
  if (it != entries_.end()) {
    it->second = std::move(value);
  } else {
    entries_.emplace_back(std::string(key), std::move(value));
  }
}

void Manifest::set(std::string_view key, double value) { set(key, csv::number(value)); }
void Manifest::set(std::string_view key, long long value) { set(key, std::to_string(value)); }
void Manifest::set(std::string_view key, unsigned long long value) {
  set(key, std::to_string(value));
}
void Manifest::set(std::string_view key, bool value) {
  set(key, std::string(value ? "true" : "false"));
}

const std::string* Manifest::find(std::string_view key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return &v;
  }
  return nullptr;
}

void Manifest::write(std::ostream& out) const {
  for (const auto& [k, v] : entries_) out << k << " = " << v << '\n';
}

void Manifest::write(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write manifest " + path.string());
  write(out);
}

Manifest Manifest::parse(std::istream& in) {
  Manifest m;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw std::runtime_error("manifest line without '=': " + t);
    m.set(trim(std::string_view(t).substr(0, eq)), trim(std::string_view(t).substr(eq + 1)));
  }
  return m;
}

}  // namespace qcd
