#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "textmark/errors.hpp"
#include "textmark/text_codec.hpp"

namespace textmark {
namespace {

using testing::random_bits;
using testing::random_text;

TEST(Charset, CanonicalTable) {
  const auto& cs = Charset32::canonical();
  EXPECT_EQ(cs.symbols().size(), 32u);
  for (char c = 'a'; c <= 'z'; ++c) EXPECT_EQ(*cs.index(c), c - 'a');
  EXPECT_EQ(*cs.index(' '), 26);
  EXPECT_EQ(*cs.index('.'), 27);
  EXPECT_EQ(*cs.index(','), 28);
  EXPECT_EQ(*cs.index('\''), 29);
  EXPECT_EQ(*cs.index('-'), 30);
  EXPECT_EQ(*cs.index('?'), 31);
  EXPECT_FALSE(cs.index('A').has_value());
}

TEST(Charset, BijectionOverAllCodes) {
  const auto& cs = Charset32::canonical();
  for (int code = 0; code < 32; ++code) EXPECT_EQ(*cs.index(cs.symbol(static_cast<std::uint8_t>(code))), code);
}

TEST(Charset, ExportedTableMatchesCode) {
  std::ifstream in(std::string(TEXTMARK_DATA_DIR) + "/charset32.txt");
  ASSERT_TRUE(in.good());
  std::stringstream body;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') body << line << '\n';
  EXPECT_EQ(body.str(), Charset32::canonical().table_text());
}

TEST(Charset, RejectsMalformedTables) {
  EXPECT_THROW(Charset32("abc"), ParamError);
  EXPECT_THROW(Charset32("abcdefghijklmnopqrstuvwxyz .,'-a"), ParamError);  // duplicate
  EXPECT_THROW(Charset32("abcdefghijklmnopqrstuvwxyz012345"), ParamError);  // no blank
  EXPECT_THROW(Charset32("abcdefghijklmnopqrstuvwxyz 01234"), ParamError);  // no punctuation
}

TEST(Charset, FoldLowercasesAndBlanksUnknowns) {
  EXPECT_EQ(Charset32::canonical().fold("Hello, World! 42"), "hello, world    ");
}

TEST(EncodeText, FirstSymbolIsAllZero) {
  EXPECT_EQ(encode_text("a"), (BitVector{0, 0, 0, 0, 0}));
  EXPECT_EQ(encode_text("?"), (BitVector{1, 1, 1, 1, 1}));
  EXPECT_EQ(encode_text("b"), (BitVector{0, 0, 0, 0, 1}));  // MSB first
}

TEST(EncodeText, TwoHundredCharactersGiveThousandBits) {
  EXPECT_EQ(encode_text(random_text(200, 1)).size(), 1000u);
}

TEST(EncodeText, RoundTripEqualsFold) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::string raw = random_text(1 + seed % 57, seed);
    if (seed % 3 == 0) raw += "ABC!\n\t9";
    const std::string folded = Charset32::canonical().fold(raw);
    const BitVector bits = encode_text(raw);
    EXPECT_EQ(bits.size(), 5 * folded.size());
    EXPECT_EQ(decode_bits(bits), folded);
  }
}

TEST(DecodeBits, ZeroGroupIsA) { EXPECT_EQ(decode_bits(BitVector{0, 0, 0, 0, 0}), "a"); }

TEST(DecodeBits, ThousandRandomBitsGiveTwoHundredCharacters) {
  EXPECT_EQ(decode_bits(random_bits(1000, 5)).size(), 200u);
}

TEST(DecodeBits, RejectsPartialGroups) {
  EXPECT_THROW(decode_bits(BitVector(7, 0)), LengthError);
  EXPECT_THROW(decode_bits(BitVector(1, 1)), LengthError);
}

// Reference flip simulator: a character changes iff one of its 5 bits flipped.
TEST(DecodeBits, FlipsOnlyTouchTheirCharacters) {
  KeyedStream rng(9, 7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::string text = random_text(200, 1000 + trial);
    BitVector bits = encode_text(text);
    std::vector<bool> touched(text.size(), false);
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (rng.uniform() < 0.03) {
        bits[i] ^= 1u;
        touched[i / 5] = true;
      }
    }
    const std::string out = decode_bits(bits);
    for (std::size_t c = 0; c < text.size(); ++c) EXPECT_EQ(out[c] != text[c], touched[c]) << c;
  }
}

TEST(Crc, CheckValueOfStandardVector) {
  // CRC-16/CCITT-FALSE of the ASCII string "123456789" is 0x29B1.
  BitVector bits;
  for (char c : std::string("123456789"))
    for (int b = 7; b >= 0; --b) bits.push_back((static_cast<unsigned char>(c) >> b) & 1u);
  EXPECT_EQ(crc16_ccitt(bits), 0x29B1);
}

TEST(Crc, AppendThenCheck) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const BitVector m = random_bits(seed * 7, seed);
    const BitVector c = append_crc(m);
    EXPECT_EQ(c.size(), m.size() + 16);
    EXPECT_TRUE(check_crc(c));
  }
}

TEST(Crc, EmptyMessage) {
  const BitVector c = append_crc({});
  EXPECT_EQ(c.size(), 16u);
  EXPECT_TRUE(check_crc(c));
  EXPECT_EQ(crc16_ccitt({}), 0xFFFF);
}

TEST(Crc, DetectsEverySingleFlip) {
  const BitVector c = append_crc(random_bits(100, 42));
  for (std::size_t i = 0; i < c.size(); ++i) {
    BitVector d = c;
    d[i] ^= 1u;
    EXPECT_FALSE(check_crc(d)) << i;
  }
}

TEST(Crc, DetectsEveryBurstUpToSixteen) {
  const BitVector c = append_crc(random_bits(40, 43));
  for (std::size_t len = 1; len <= 16; ++len) {
    // A burst of length len has both end bits flipped and any interior pattern.
    const std::uint32_t interior = len >= 2 ? 1u << (len - 2) : 1u;
    for (std::size_t start = 0; start + len <= c.size(); ++start) {
      for (std::uint32_t mid = 0; mid < interior; ++mid) {
        BitVector d = c;
        d[start] ^= 1u;
        if (len >= 2) {
          d[start + len - 1] ^= 1u;
          for (std::size_t k = 0; k + 2 < len; ++k) d[start + 1 + k] ^= (mid >> k) & 1u;
        }
        ASSERT_FALSE(check_crc(d)) << "len " << len << " start " << start << " mid " << mid;
      }
    }
  }
}

TEST(Crc, TooShortFails) { EXPECT_FALSE(check_crc(BitVector(15, 0))); }

}  // namespace
}  // namespace textmark
