#pragma once

// Reference implementations used as test oracles. They work on plain
// uint64_t with explicit masking and share no code with the library.

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>

namespace oracle {

inline uint64_t mask(unsigned w) { return w >= 64 ? ~0ULL : (1ULL << w) - 1; }

inline int64_t to_signed(uint64_t x, unsigned w)
{
  x &= mask(w);
  if (x & (1ULL << (w - 1))) return static_cast<int64_t>(x) - (1LL << w);
  return static_cast<int64_t>(x);
}

inline uint64_t from_signed(int64_t v, unsigned w)
{
  return static_cast<uint64_t>(v) & mask(w);
}

/** Binary bit-vector operator by SMT-LIB name; result as an unsigned number
 *  (comparisons return 0/1). nullopt for names it does not know. */
inline std::optional<uint64_t> bv_binary(const std::string & op,
                                         uint64_t a,
                                         uint64_t b,
                                         unsigned w)
{
  const uint64_t m = mask(w);
  a &= m;
  b &= m;
  const int64_t sa = to_signed(a, w), sb = to_signed(b, w);
  if (op == "bvand") return a & b;
  if (op == "bvor") return a | b;
  if (op == "bvxor") return a ^ b;
  if (op == "bvadd") return (a + b) & m;
  if (op == "bvsub") return (a + (m + 1) - b) & m;
  if (op == "bvmul") return (a * b) & m;
  if (op == "bvudiv") return b == 0 ? m : a / b;
  if (op == "bvurem") return b == 0 ? a : a % b;
  if (op == "bvshl") return b >= w ? 0 : (a << b) & m;
  if (op == "bvlshr") return b >= w ? 0 : a >> b;
  if (op == "bvashr") {
    if (b >= w) return sa < 0 ? m : 0;
    // arithmetic shift written as repeated halving toward minus infinity
    int64_t v = sa;
    for (uint64_t i = 0; i < b; ++i) v = (v - (v < 0 ? 1 : 0)) / 2;
    return from_signed(v, w);
  }
  if (op == "bvult") return a < b;
  if (op == "bvule") return a <= b;
  if (op == "bvugt") return a > b;
  if (op == "bvuge") return a >= b;
  if (op == "bvslt") return sa < sb;
  if (op == "bvsle") return sa <= sb;
  if (op == "bvsgt") return sa > sb;
  if (op == "bvsge") return sa >= sb;
  if (op == "bvcomp") return a == b;
  if (op == "concat") return (a << w) | b;
  return std::nullopt;
}

}  // namespace oracle
