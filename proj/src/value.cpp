#include "smt/value.h"

#include <algorithm>
#include <map>

#include "smt/exceptions.h"
#include "smt/smtlib_printer.h"

namespace smt {

struct Value::ArrayData
{
  Sort sort;
  Value dflt;
  std::vector<Store> stores;  // sorted by index, no entry equals dflt
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v)
{
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

BigInt pow2(uint64_t w) { return BigInt(1) << w; }

template <class T>
std::strong_ordering cmp(const T & a, const T & b)
{
  if (a < b) return std::strong_ordering::less;
  if (b < a) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

void check_sort(const Value & v, const Sort & expected, const char * what)
{
  if (!(v.sort() == expected)) {
    throw IncorrectUsageException(std::string("array ") + what + " of sort "
                                  + v.sort().to_string() + " where "
                                  + expected.to_string() + " was expected");
  }
}

}  // namespace

Value::Value() : data_(std::in_place_index<0>, false) {}

Value Value::boolean(bool b) { return Value(Data(std::in_place_index<0>, b)); }

Value Value::bv(uint64_t width, const BigInt & n)
{
  if (width == 0) {
    throw IncorrectUsageException("bit-vector width must be at least 1");
  }
  BigInt m = pow2(width);
  BigInt r = n % m;
  if (r < 0) r += m;
  return Value(Data(std::in_place_index<1>, BVData{ width, std::move(r) }));
}

Value Value::integer(const BigInt & n)
{
  return Value(Data(std::in_place_index<2>, n));
}

Value Value::real(const Rational & q)
{
  return Value(Data(std::in_place_index<3>, q));
}

Value Value::real(const BigInt & num, const BigInt & den)
{
  if (den == 0) {
    throw IncorrectUsageException("rational with zero denominator");
  }
  if (den < 0) return real(Rational(BigInt(-num), BigInt(-den)));
  return real(Rational(num, den));
}

Value Value::const_array(const Sort & array_sort, const Value & element)
{
  return array(array_sort, element, {});
}

Value Value::array(const Sort & array_sort,
                   const Value & element,
                   const std::vector<Store> & stores)
{
  if (!array_sort.is(SortKind::ARRAY)) {
    throw IncorrectUsageException("array value needs an array sort, got "
                                  + array_sort.to_string());
  }
  const Sort & isort = array_sort.index_sort();
  const Sort & esort = array_sort.element_sort();
  check_sort(element, esort, "element");

  std::map<Value, Value> table;
  for (const auto & [k, v] : stores) {
    check_sort(k, isort, "index");
    check_sort(v, esort, "element");
    table.insert_or_assign(k, v);
  }

  Value dflt = element;
  std::erase_if(table, [&](const auto & kv) { return kv.second == dflt; });

  // With a finite index domain, several (default, stores) pairs describe the
  // same function. Pick the default that needs the fewest stores, breaking
  // ties by value order.
  if (std::optional<BigInt> n = carrier_size(isort); n && !table.empty()) {
    std::map<Value, BigInt> freq;
    freq[dflt] = *n - table.size();
    for (const auto & kv : table) freq[kv.second] += 1;
    auto best = freq.begin();
    for (auto it = freq.begin(); it != freq.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    if (!(best->first == dflt)) {
      // Materialise the indices that used to read the old default. There are
      // at most |table| of them since the new default is at least as
      // frequent as the old one.
      std::map<Value, Value> full = table;
      for (BigInt i = 0; i < *n; ++i) {
        Value idx = carrier_value(isort, i);
        if (!full.count(idx)) full.emplace(std::move(idx), dflt);
      }
      dflt = best->first;
      std::erase_if(full, [&](const auto & kv) { return kv.second == dflt; });
      table = std::move(full);
    }
  }

  auto data = std::make_shared<ArrayData>();
  data->sort = array_sort;
  data->dflt = std::move(dflt);
  data->stores.assign(table.begin(), table.end());
  return Value(Data(std::in_place_index<4>,
                    std::shared_ptr<const ArrayData>(std::move(data))));
}

Value Value::uninterpreted(const Sort & sort, uint64_t index)
{
  if (!sort.is(SortKind::UNINTERPRETED)) {
    throw IncorrectUsageException(
        "uninterpreted value needs an uninterpreted sort, got "
        + sort.to_string());
  }
  return Value(
      Data(std::in_place_index<5>, UninterpretedData{ sort, index }));
}

ValueKind Value::kind() const
{
  return static_cast<ValueKind>(data_.index());
}

Sort Value::sort() const
{
  switch (kind()) {
    case ValueKind::BOOL: return Sort::boolean();
    case ValueKind::BV: return Sort::bv(std::get<1>(data_).width);
    case ValueKind::INT: return Sort::integer();
    case ValueKind::REAL: return Sort::real();
    case ValueKind::ARRAY: return std::get<4>(data_)->sort;
    case ValueKind::UNINTERPRETED: return std::get<5>(data_).sort;
  }
  throw IncorrectUsageException("corrupt value");
}

bool Value::as_bool() const
{
  if (!is(ValueKind::BOOL)) throw IncorrectUsageException("not a Bool value");
  return std::get<0>(data_);
}

uint64_t Value::bv_width() const
{
  if (!is(ValueKind::BV)) throw IncorrectUsageException("not a BV value");
  return std::get<1>(data_).width;
}

const BigInt & Value::bv_nat() const
{
  if (!is(ValueKind::BV)) throw IncorrectUsageException("not a BV value");
  return std::get<1>(data_).nat;
}

BigInt Value::bv_signed() const
{
  const BVData & d = std::get<1>(data_);
  if (bit_test(d.nat, static_cast<unsigned>(d.width - 1))) {
    return d.nat - pow2(d.width);
  }
  return d.nat;
}

const BigInt & Value::as_integer() const
{
  if (!is(ValueKind::INT)) throw IncorrectUsageException("not an Int value");
  return std::get<2>(data_);
}

const Rational & Value::as_real() const
{
  if (!is(ValueKind::REAL)) throw IncorrectUsageException("not a Real value");
  return std::get<3>(data_);
}

const Value & Value::array_default() const
{
  if (!is(ValueKind::ARRAY)) {
    throw IncorrectUsageException("not an array value");
  }
  return std::get<4>(data_)->dflt;
}

const std::vector<Value::Store> & Value::array_stores() const
{
  if (!is(ValueKind::ARRAY)) {
    throw IncorrectUsageException("not an array value");
  }
  return std::get<4>(data_)->stores;
}

bool Value::is_const_array() const
{
  return is(ValueKind::ARRAY) && array_stores().empty();
}

Value Value::select(const Value & index) const
{
  const auto & stores = array_stores();
  auto it = std::lower_bound(
      stores.begin(), stores.end(), index,
      [](const Store & s, const Value & k) { return s.first < k; });
  if (it != stores.end() && it->first == index) return it->second;
  return array_default();
}

Value Value::store(const Value & index, const Value & element) const
{
  std::vector<Store> stores = array_stores();
  stores.emplace_back(index, element);
  return array(sort(), array_default(), stores);
}

uint64_t Value::uninterpreted_index() const
{
  if (!is(ValueKind::UNINTERPRETED)) {
    throw IncorrectUsageException("not an uninterpreted value");
  }
  return std::get<5>(data_).index;
}

std::size_t Value::hash() const
{
  std::size_t h = data_.index();
  switch (kind()) {
    case ValueKind::BOOL: return mix(h, std::get<0>(data_));
    case ValueKind::BV:
      h = mix(h, std::get<1>(data_).width);
      return mix(h, std::hash<BigInt>{}(std::get<1>(data_).nat));
    case ValueKind::INT: return mix(h, std::hash<BigInt>{}(std::get<2>(data_)));
    case ValueKind::REAL: {
      const Rational & q = std::get<3>(data_);
      h = mix(h, std::hash<BigInt>{}(numerator(q)));
      return mix(h, std::hash<BigInt>{}(denominator(q)));
    }
    case ValueKind::ARRAY: {
      const ArrayData & a = *std::get<4>(data_);
      h = mix(h, a.sort.hash());
      h = mix(h, a.dflt.hash());
      for (const auto & [k, v] : a.stores) h = mix(mix(h, k.hash()), v.hash());
      return h;
    }
    case ValueKind::UNINTERPRETED:
      h = mix(h, std::get<5>(data_).sort.hash());
      return mix(h, std::get<5>(data_).index);
  }
  return h;
}

bool operator==(const Value & a, const Value & b)
{
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Value & a, const Value & b)
{
  if (auto c = a.data_.index() <=> b.data_.index(); c != 0) return c;
  switch (a.kind()) {
    case ValueKind::BOOL: return std::get<0>(a.data_) <=> std::get<0>(b.data_);
    case ValueKind::BV: {
      const auto & x = std::get<1>(a.data_);
      const auto & y = std::get<1>(b.data_);
      if (auto c = x.width <=> y.width; c != 0) return c;
      return cmp(x.nat, y.nat);
    }
    case ValueKind::INT: return cmp(std::get<2>(a.data_), std::get<2>(b.data_));
    case ValueKind::REAL: return cmp(std::get<3>(a.data_), std::get<3>(b.data_));
    case ValueKind::ARRAY: {
      const auto & x = *std::get<4>(a.data_);
      const auto & y = *std::get<4>(b.data_);
      if (&x == &y) return std::strong_ordering::equal;
      if (!(x.sort == y.sort)) {
        return x.sort.to_string() <=> y.sort.to_string();
      }
      if (auto c = x.dflt <=> y.dflt; c != 0) return c;
      return std::lexicographical_compare_three_way(
          x.stores.begin(), x.stores.end(), y.stores.begin(), y.stores.end(),
          [](const Value::Store & s, const Value::Store & t) {
            if (auto c = s.first <=> t.first; c != 0) return c;
            return s.second <=> t.second;
          });
    }
    case ValueKind::UNINTERPRETED: {
      const auto & x = std::get<5>(a.data_);
      const auto & y = std::get<5>(b.data_);
      if (!(x.sort == y.sort)) {
        return x.sort.to_string() <=> y.sort.to_string();
      }
      return x.index <=> y.index;
    }
  }
  return std::strong_ordering::equal;
}

std::ostream & operator<<(std::ostream & os, const Value & v)
{
  return os << print_value(v);
}

std::optional<BigInt> carrier_size(const Sort & sort)
{
  switch (sort.kind()) {
    case SortKind::BOOL: return BigInt(2);
    case SortKind::BV: return pow2(sort.width());
    case SortKind::UNINTERPRETED:
      return BigInt(std::max<uint64_t>(sort.arity(), 1));
    case SortKind::ARRAY: {
      auto n = carrier_size(sort.index_sort());
      auto e = carrier_size(sort.element_sort());
      if (!n || !e) return std::nullopt;
      // Guard against astronomically large exponents; anything this big is
      // far beyond any enumeration budget anyway.
      if (*n > 4096) return std::nullopt;
      return pow(*e, static_cast<unsigned>(*n));
    }
    case SortKind::INT:
    case SortKind::REAL:
    case SortKind::FUNCTION: return std::nullopt;
  }
  return std::nullopt;
}

Value carrier_value(const Sort & sort, const BigInt & i)
{
  auto n = carrier_size(sort);
  if (!n || i < 0 || i >= *n) {
    throw IncorrectUsageException("no carrier element #" + i.str() + " in "
                                  + sort.to_string());
  }
  switch (sort.kind()) {
    case SortKind::BOOL: return Value::boolean(i != 0);
    case SortKind::BV: return Value::bv(sort.width(), i);
    case SortKind::UNINTERPRETED:
      return Value::uninterpreted(sort, static_cast<uint64_t>(i));
    case SortKind::ARRAY: {
      // Mixed-radix digits, one per index in ascending index order.
      const Sort & isort = sort.index_sort();
      const Sort & esort = sort.element_sort();
      BigInt idx_count = *carrier_size(isort);
      BigInt base = *carrier_size(esort);
      BigInt rest = i;
      std::vector<Value::Store> stores;
      for (BigInt k = 0; k < idx_count; ++k) {
        BigInt digit = rest % base;
        rest /= base;
        stores.emplace_back(carrier_value(isort, k),
                            carrier_value(esort, digit));
      }
      return Value::array(sort, carrier_value(esort, 0), stores);
    }
    default: break;
  }
  throw IncorrectUsageException("sort has no finite carrier: "
                                + sort.to_string());
}

Value default_value(const Sort & sort)
{
  switch (sort.kind()) {
    case SortKind::INT: return Value::integer(0);
    case SortKind::REAL: return Value::real(Rational(0));
    case SortKind::ARRAY:
      return Value::const_array(sort, default_value(sort.element_sort()));
    case SortKind::FUNCTION:
      throw IncorrectUsageException("function sorts have no value: "
                                    + sort.to_string());
    default: return carrier_value(sort, 0);
  }
}

}  // namespace smt
