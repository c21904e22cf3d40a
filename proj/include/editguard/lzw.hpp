#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// TIFF 6.0 variant of LZW over raw bytes: variable-width codes starting at
// 9 bits growing to 12, ClearCode 256, EndOfInformation 257, and the
// early code-width change (the width grows one table entry sooner than in
// generic LZW). Bits are packed most-significant first.

namespace editguard::lzw {

struct DecodeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<uint8_t> compress(std::string_view input);

// Written from the decoder side of the format description, independently of
// compress(), so a round-trip exercises two separate routes through the
// format. Throws DecodeError on malformed input.
std::string decompress(const std::vector<uint8_t>& input);

}  // namespace editguard::lzw
