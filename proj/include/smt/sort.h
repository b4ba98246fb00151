#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace smt {

enum class SortKind
{
  BOOL,
  INT,
  REAL,
  BV,
  FUNCTION,
  ARRAY,
  UNINTERPRETED
};

std::string to_string(SortKind sk);

class Sort;
using SortVec = std::vector<Sort>;

/** Immutable, structurally compared sort.
 *
 *  Sorts are plain values: they are not tied to a term manager and can be
 *  copied between threads and solvers freely. Use the static factories; they
 *  validate the kind-specific parameters and throw IncorrectUsageException
 *  on malformed input.
 */
class Sort
{
 public:
  /** Defaults to Bool. */
  Sort();

  static Sort boolean();
  static Sort integer();
  static Sort real();
  static Sort bv(uint64_t width);
  /** Function sort `domain -> codomain`; first-order only. */
  static Sort function(const SortVec & domain, const Sort & codomain);
  static Sort array(const Sort & index, const Sort & element);
  /** An uninterpreted sort. The reference backend reads `arity` as the size
   *  of the finite carrier it enumerates for this sort (1 when arity is 0). */
  static Sort uninterpreted(const std::string & name, uint64_t arity = 0);

  SortKind kind() const;
  bool is(SortKind sk) const { return kind() == sk; }

  uint64_t width() const;
  const SortVec & domain() const;
  const Sort & codomain() const;
  const Sort & index_sort() const;
  const Sort & element_sort() const;
  const std::string & name() const;
  uint64_t arity() const;

  std::size_t hash() const;
  std::string to_string() const;

  friend bool operator==(const Sort & a, const Sort & b);

  /** Opaque shared representation. */
  struct Node;

 private:
  explicit Sort(std::shared_ptr<const Node> node);

  std::shared_ptr<const Node> node_;
};

std::ostream & operator<<(std::ostream & os, const Sort & s);

}  // namespace smt

template <>
struct std::hash<smt::Sort>
{
  std::size_t operator()(const smt::Sort & s) const { return s.hash(); }
};
