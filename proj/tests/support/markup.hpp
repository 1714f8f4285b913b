#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace smt::testing {

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(SMT_FIXTURE_DIR) / name;
}

inline std::string unescape(const std::string& s) {
  static const std::vector<std::pair<std::string, std::string>> entities{
      {"&lt;", "<"}, {"&gt;", ">"}, {"&quot;", "\""}, {"&#39;", "'"}, {"&amp;", "&"}};
  std::string out;
  for (std::size_t i = 0; i < s.size();) {
    bool matched = false;
    if (s[i] == '&') {
      for (const auto& [ent, ch] : entities) {
        if (s.compare(i, ent.size(), ent) == 0) {
          out += ch;
          i += ent.size();
          matched = true;
          break;
        }
      }
    }
    if (!matched) out += s[i++];
  }
  return out;
}

/// Visible text of every caption paragraph, one line per paragraph.
inline std::string markup_text(const std::string& html) {
  const std::string open = "<p class=\"u\">";
  std::string out;
  std::size_t pos = 0;
  bool first = true;
  while ((pos = html.find(open, pos)) != std::string::npos) {
    pos += open.size();
    const std::size_t end = html.find("</p>", pos);
    std::string body = html.substr(pos, end - pos);
    std::string text;
    bool in_tag = false;
    for (char c : body) {
      if (c == '<') in_tag = true;
      else if (c == '>') in_tag = false;
      else if (!in_tag) text += c;
    }
    if (!first) out += '\n';
    out += unescape(text);
    first = false;
    pos = end;
  }
  return out;
}

inline std::size_t count_of(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t p = haystack.find(needle); p != std::string::npos;
       p = haystack.find(needle, p + needle.size())) {
    ++n;
  }
  return n;
}

}  // namespace smt::testing
