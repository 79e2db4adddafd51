#pragma once

#include <cstddef>
#include <string_view>

namespace claimgraph::utf8 {

// Number of Unicode scalar values in a UTF-8 string. Bytes that are not
// continuation bytes each start a scalar, so malformed input degrades to a
// byte count instead of crashing.
std::size_t scalar_count(std::string_view text);

// Slice [start, end) measured in Unicode scalar values. Returns a view into
// `text`. Offsets past the end clamp to the end of the string.
std::string_view slice(std::string_view text, std::size_t start,
                       std::size_t end);

}  // namespace claimgraph::utf8
