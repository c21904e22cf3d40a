#include "editguard/lzw.hpp"

#include <array>
#include <unordered_map>

namespace editguard::lzw {

namespace {

constexpr uint32_t kClearCode = 256;
constexpr uint32_t kEoiCode = 257;
constexpr uint32_t kFirstFree = 258;
constexpr int kMinBits = 9;
constexpr int kMaxBits = 12;
constexpr uint32_t kTableLimit = 4094;  // emit Clear when the next free code hits this

class BitWriter {
public:
    void put(uint32_t code, int width) {
        acc_ = (acc_ << width) | (code & ((1u << width) - 1));
        nbits_ += width;
        while (nbits_ >= 8) {
            nbits_ -= 8;
            out_.push_back(static_cast<uint8_t>((acc_ >> nbits_) & 0xffu));
        }
    }
    std::vector<uint8_t> finish() {
        if (nbits_ > 0) {
            out_.push_back(static_cast<uint8_t>((acc_ << (8 - nbits_)) & 0xffu));
            nbits_ = 0;
        }
        return std::move(out_);
    }

private:
    std::vector<uint8_t> out_;
    uint64_t acc_ = 0;
    int nbits_ = 0;
};

class BitReader {
public:
    explicit BitReader(const std::vector<uint8_t>& data) : data_(data) {}
    // Returns false once fewer than `width` bits remain.
    bool get(int width, uint32_t& code) {
        while (nbits_ < width) {
            if (pos_ >= data_.size()) return false;
            acc_ = (acc_ << 8) | data_[pos_++];
            nbits_ += 8;
        }
        nbits_ -= width;
        code = static_cast<uint32_t>((acc_ >> nbits_) & ((1u << width) - 1));
        return true;
    }

private:
    const std::vector<uint8_t>& data_;
    size_t pos_ = 0;
    uint64_t acc_ = 0;
    int nbits_ = 0;
};

}  // namespace

std::vector<uint8_t> compress(std::string_view input) {
    BitWriter out;
    // (prefix code << 8 | next byte) -> code
    std::unordered_map<uint32_t, uint32_t> table;
    table.reserve(4096);

    uint32_t next = kFirstFree;
    int width = kMinBits;
    // The encoder grows its code width once `next` passes 2^w - 1; the
    // decoder, whose table fills one entry behind, grows when its own `next`
    // reaches 2^w - 1 (the "early change"). Pairing verified byte-for-byte
    // against libtiff streams.
    uint32_t max_code = (1u << kMinBits) - 1;

    out.put(kClearCode, width);
    uint32_t prefix = UINT32_MAX;
    for (unsigned char byte : input) {
        if (prefix == UINT32_MAX) {
            prefix = byte;
            continue;
        }
        const uint32_t key = (prefix << 8) | byte;
        auto it = table.find(key);
        if (it != table.end()) {
            prefix = it->second;
            continue;
        }
        out.put(prefix, width);
        table.emplace(key, next++);
        prefix = byte;
        if (next == kTableLimit) {
            out.put(kClearCode, width);
            table.clear();
            next = kFirstFree;
            width = kMinBits;
            max_code = (1u << kMinBits) - 1;
        } else if (next > max_code) {
            ++width;
            max_code = (1u << width) - 1;
        }
    }
    if (prefix != UINT32_MAX) {
        out.put(prefix, width);
        // The decoder adds a table entry for this flushed code too, so its
        // width can change before EndOfInformation; mirror that here.
        ++next;
        if (next > max_code && width < kMaxBits) ++width;
    }
    out.put(kEoiCode, width);
    return out.finish();
}

std::string decompress(const std::vector<uint8_t>& input) {
    BitReader in(input);
    std::vector<std::string> table(4096);
    for (uint32_t c = 0; c < 256; ++c) table[c] = std::string(1, static_cast<char>(c));

    std::string out;
    uint32_t next = kFirstFree;
    int width = kMinBits;
    uint32_t old = UINT32_MAX;

    uint32_t code = 0;
    while (true) {
        if (!in.get(width, code)) throw DecodeError("lzw: truncated stream");
        if (code == kEoiCode) break;
        if (code == kClearCode) {
            next = kFirstFree;
            width = kMinBits;
            old = UINT32_MAX;
            continue;
        }
        if (old == UINT32_MAX) {
            if (code > 255) throw DecodeError("lzw: expected literal after clear");
            out += table[code];
            old = code;
        } else {
            std::string entry;
            if (code < next && code != kClearCode && code != kEoiCode) {
                entry = table[code];
            } else if (code == next) {
                entry = table[old] + table[old][0];
            } else {
                throw DecodeError("lzw: code beyond table");
            }
            out += entry;
            if (next >= 4096) throw DecodeError("lzw: table overflow");
            table[next++] = table[old] + entry[0];
            old = code;
        }
        if (width < kMaxBits && next == (1u << width) - 1) ++width;
    }
    return out;
}

}  // namespace editguard::lzw
