#include "textmark/text_codec.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "textmark/errors.hpp"

namespace textmark {

const Charset32& Charset32::canonical() {
  static const Charset32 charset("abcdefghijklmnopqrstuvwxyz .,'-?");
  return charset;
}

Charset32::Charset32(std::string_view symbols) : symbols_(symbols) {
  if (symbols_.size() != 32) throw ParamError("charset must contain exactly 32 symbols");
  lookup_.fill(-1);
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    const auto c = static_cast<unsigned char>(symbols_[i]);
    if (lookup_[c] >= 0) throw ParamError("charset symbols must be distinct");
    lookup_[c] = static_cast<std::int16_t>(i);
  }
  for (char c = 'a'; c <= 'z'; ++c)
    if (lookup_[static_cast<unsigned char>(c)] < 0) throw ParamError("charset must contain a..z");
  if (lookup_[' '] < 0) throw ParamError("charset must contain the blank");
  const bool has_punct = std::any_of(symbols_.begin(), symbols_.end(), [](char c) {
    return std::ispunct(static_cast<unsigned char>(c)) != 0;
  });
  if (!has_punct) throw ParamError("charset must contain a punctuation mark");
}

std::optional<std::uint8_t> Charset32::index(char c) const {
  const auto v = lookup_[static_cast<unsigned char>(c)];
  if (v < 0) return std::nullopt;
  return static_cast<std::uint8_t>(v);
}

std::string Charset32::fold(std::string_view text) const {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    char lowered = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    out.push_back(index(lowered) ? lowered : ' ');
  }
  return out;
}

std::string Charset32::table_text() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    os << i << '\t';
    if (symbols_[i] == ' ')
      os << "<blank>";
    else
      os << symbols_[i];
    os << '\n';
  }
  return os.str();
}

BitVector encode_text(std::string_view text, const Charset32& charset) {
  const std::string folded = charset.fold(text);
  BitVector bits;
  bits.reserve(folded.size() * kBitsPerChar);
  for (char c : folded) {
    const std::uint8_t code = *charset.index(c);
    for (int b = kBitsPerChar - 1; b >= 0; --b) bits.push_back((code >> b) & 1u);
  }
  return bits;
}

std::string decode_bits(const BitVector& bits, const Charset32& charset) {
  if (bits.size() % kBitsPerChar != 0)
    throw LengthError("bit count " + std::to_string(bits.size()) + " is not a multiple of 5");
  std::string out;
  out.reserve(bits.size() / kBitsPerChar);
  for (std::size_t i = 0; i < bits.size(); i += kBitsPerChar) {
    std::uint8_t code = 0;
    for (int b = 0; b < kBitsPerChar; ++b) code = static_cast<std::uint8_t>((code << 1) | (bits[i + b] & 1u));
    out.push_back(charset.symbol(code));
  }
  return out;
}

std::uint16_t crc16_ccitt(const BitVector& bits) {
  std::uint16_t crc = 0xFFFF;
  for (std::uint8_t bit : bits) {
    const bool top = (crc & 0x8000u) != 0;
    crc = static_cast<std::uint16_t>(crc << 1);
    if (top != ((bit & 1u) != 0)) crc ^= 0x1021u;
  }
  return crc;
}

BitVector append_crc(const BitVector& bits) {
  BitVector out = bits;
  const std::uint16_t crc = crc16_ccitt(bits);
  for (int b = kCrcBits - 1; b >= 0; --b) out.push_back((crc >> b) & 1u);
  return out;
}

bool check_crc(const BitVector& bits_with_crc) {
  if (bits_with_crc.size() < static_cast<std::size_t>(kCrcBits)) return false;
  const BitVector message(bits_with_crc.begin(), bits_with_crc.end() - kCrcBits);
  std::uint16_t received = 0;
  for (auto it = bits_with_crc.end() - kCrcBits; it != bits_with_crc.end(); ++it)
    received = static_cast<std::uint16_t>((received << 1) | (*it & 1u));
  return crc16_ccitt(message) == received;
}

}  // namespace textmark
