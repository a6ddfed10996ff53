#pragma once

#include <stdexcept>
#include <string>

namespace qdrinfeld::testing {

/// Replaces the body of section `header` (up to the next section) in a spec text.
inline std::string replace_section(const std::string& text, const std::string& header, const std::string& body) {
  auto at = text.find(header);
  if (at == std::string::npos) throw std::invalid_argument("no section " + header);
  auto end = text.find("\n[", at + header.size());
  return text.substr(0, at) + header + "\n" + body + (end == std::string::npos ? "" : text.substr(end));
}

}  // namespace qdrinfeld::testing
