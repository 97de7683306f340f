#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "textmark/bits.hpp"

namespace textmark {

inline constexpr int kBitsPerChar = 5;

// A 32-symbol alphabet with a bijective 5-bit code.
class Charset32 {
 public:
  // 'a'..'z' -> 0..25, ' ' -> 26, '.' -> 27, ',' -> 28, '\'' -> 29, '-' -> 30, '?' -> 31.
  static const Charset32& canonical();

  // Throws ParamError unless `symbols` has exactly 32 distinct characters that
  // include a..z, the blank and at least one punctuation mark.
  explicit Charset32(std::string_view symbols);

  std::optional<std::uint8_t> index(char c) const;
  char symbol(std::uint8_t code) const { return symbols_[code & 31u]; }
  const std::string& symbols() const { return symbols_; }

  // Uppercase -> lowercase; anything outside the table -> blank.
  std::string fold(std::string_view text) const;

  // Text rendering of the table, one "code<TAB>symbol" line per entry.
  std::string table_text() const;

 private:
  std::string symbols_;
  std::array<std::int16_t, 256> lookup_{};
};

// 5 bits per folded character, most significant bit first.
BitVector encode_text(std::string_view text, const Charset32& charset = Charset32::canonical());

// Inverse of encode_text. Throws LengthError if bits.size() % 5 != 0.
std::string decode_bits(const BitVector& bits, const Charset32& charset = Charset32::canonical());

inline constexpr int kCrcBits = 16;

// CRC-16/CCITT (poly 0x1021, init 0xFFFF, no reflection, no final xor) over a
// bit sequence, processed in order.
std::uint16_t crc16_ccitt(const BitVector& bits);

BitVector append_crc(const BitVector& bits);
bool check_crc(const BitVector& bits_with_crc);

}  // namespace textmark
