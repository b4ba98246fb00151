#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <utility>
#include <variant>
#include <vector>

#include "smt/sort.h"

namespace smt {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class ValueKind
{
  BOOL,
  BV,
  INT,
  REAL,
  ARRAY,
  UNINTERPRETED
};

/** A theory value, always in canonical form.
 *
 *  - bit-vectors are reduced modulo 2^width at construction;
 *  - rationals are kept in lowest terms with a positive denominator;
 *  - arrays are a default element plus a sorted list of stores, normalised so
 *    that two arrays are equal (==) exactly when they agree at every index.
 *
 *  Canonical form makes structural equality coincide with semantic
 *  equality, which is what hash-consed value terms rely on.
 */
class Value
{
 public:
  using Store = std::pair<Value, Value>;

  Value();

  static Value boolean(bool b);
  /** Any integer n is accepted and reduced to n mod 2^width. */
  static Value bv(uint64_t width, const BigInt & n);
  static Value integer(const BigInt & n);
  static Value real(const Rational & q);
  /** Throws IncorrectUsageException when den is zero. */
  static Value real(const BigInt & num, const BigInt & den);
  static Value const_array(const Sort & array_sort, const Value & element);
  /** Array with default `element` overwritten by `stores` in order (later
   *  stores win). */
  static Value array(const Sort & array_sort,
                     const Value & element,
                     const std::vector<Store> & stores);
  /** The index-th element of an uninterpreted sort's carrier. */
  static Value uninterpreted(const Sort & sort, uint64_t index);

  ValueKind kind() const;
  bool is(ValueKind k) const { return kind() == k; }
  Sort sort() const;

  bool as_bool() const;
  uint64_t bv_width() const;
  const BigInt & bv_nat() const;
  /** Two's complement reading of a bit-vector value. */
  BigInt bv_signed() const;
  const BigInt & as_integer() const;
  const Rational & as_real() const;

  const Value & array_default() const;
  const std::vector<Store> & array_stores() const;
  bool is_const_array() const;
  Value select(const Value & index) const;
  Value store(const Value & index, const Value & element) const;

  uint64_t uninterpreted_index() const;

  std::size_t hash() const;

  friend bool operator==(const Value & a, const Value & b);
  friend std::strong_ordering operator<=>(const Value & a, const Value & b);

 private:
  struct BVData
  {
    uint64_t width;
    BigInt nat;
  };
  struct ArrayData;
  struct UninterpretedData
  {
    Sort sort;
    uint64_t index;
  };

  using Data = std::variant<bool,
                            BVData,
                            BigInt,
                            Rational,
                            std::shared_ptr<const ArrayData>,
                            UninterpretedData>;

  explicit Value(Data d) : data_(std::move(d)) {}

  Data data_;
};

std::ostream & operator<<(std::ostream & os, const Value & v);

/** Number of values of a sort under the finite-domain convention used by the
 *  reference backend; nullopt for infinite (INT, REAL, arrays over them) and
 *  for FUNCTION sorts. UNINTERPRETED sorts have max(arity, 1) elements. */
std::optional<BigInt> carrier_size(const Sort & sort);

/** The i-th element (0-based, ascending order) of a finite carrier. */
Value carrier_value(const Sort & sort, const BigInt & i);

/** A canonical "zero" of the sort: false, 0, the first carrier element, or a
 *  constant array of the element sort's default. */
Value default_value(const Sort & sort);

}  // namespace smt

template <>
struct std::hash<smt::Value>
{
  std::size_t operator()(const smt::Value & v) const { return v.hash(); }
};
