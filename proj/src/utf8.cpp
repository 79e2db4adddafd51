#include "claimgraph/utf8.hpp"

namespace claimgraph::utf8 {

namespace {
inline bool is_continuation(unsigned char b) { return (b & 0xC0) == 0x80; }
}  // namespace

std::size_t scalar_count(std::string_view text) {
  std::size_t n = 0;
  for (unsigned char b : text) {
    if (!is_continuation(b)) ++n;
  }
  return n;
}

std::string_view slice(std::string_view text, std::size_t start,
                       std::size_t end) {
  if (end < start) end = start;
  std::size_t byte_start = text.size();
  std::size_t byte_end = text.size();
  std::size_t scalar = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (is_continuation(static_cast<unsigned char>(text[i]))) continue;
    if (scalar == start) byte_start = i;
    if (scalar == end) {
      byte_end = i;
      break;
    }
    ++scalar;
  }
  if (start == 0) byte_start = 0;
  if (byte_end < byte_start) byte_end = byte_start;
  return text.substr(byte_start, byte_end - byte_start);
}

}  // namespace claimgraph::utf8
