#include "smt/sort.h"

#include <sstream>

#include "smt/exceptions.h"

namespace smt {

struct Sort::Node
{
  SortKind kind = SortKind::BOOL;
  uint64_t width = 0;
  // FUNCTION: domain; ARRAY: {index, element}
  SortVec params;
  // FUNCTION codomain
  std::vector<Sort> codomain;
  std::string name;
  uint64_t arity = 0;
  std::size_t hash = 0;
};

namespace {

std::size_t combine(std::size_t seed, std::size_t v)
{
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::shared_ptr<const Sort::Node> finish(Sort::Node n)
{
  std::size_t h = std::hash<int>{}(static_cast<int>(n.kind));
  h = combine(h, n.width);
  for (const Sort & p : n.params) h = combine(h, p.hash());
  for (const Sort & p : n.codomain) h = combine(h, p.hash());
  h = combine(h, std::hash<std::string>{}(n.name));
  h = combine(h, n.arity);
  n.hash = h;
  return std::make_shared<const Sort::Node>(std::move(n));
}

const std::shared_ptr<const Sort::Node> & bool_node()
{
  static const std::shared_ptr<const Sort::Node> node = [] {
    Sort::Node n;
    n.kind = SortKind::BOOL;
    return finish(std::move(n));
  }();
  return node;
}

}  // namespace

std::string to_string(SortKind sk)
{
  switch (sk) {
    case SortKind::BOOL: return "BOOL";
    case SortKind::INT: return "INT";
    case SortKind::REAL: return "REAL";
    case SortKind::BV: return "BV";
    case SortKind::FUNCTION: return "FUNCTION";
    case SortKind::ARRAY: return "ARRAY";
    case SortKind::UNINTERPRETED: return "UNINTERPRETED";
  }
  return "<unknown sort kind>";
}

Sort::Sort() : node_(bool_node()) {}

Sort::Sort(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Sort Sort::boolean() { return Sort(); }

Sort Sort::integer()
{
  static const Sort s = [] {
    Node n;
    n.kind = SortKind::INT;
    return Sort(finish(std::move(n)));
  }();
  return s;
}

Sort Sort::real()
{
  static const Sort s = [] {
    Node n;
    n.kind = SortKind::REAL;
    return Sort(finish(std::move(n)));
  }();
  return s;
}

Sort Sort::bv(uint64_t width)
{
  if (width == 0) {
    throw IncorrectUsageException("bit-vector width must be at least 1");
  }
  Node n;
  n.kind = SortKind::BV;
  n.width = width;
  return Sort(finish(std::move(n)));
}

Sort Sort::function(const SortVec & domain, const Sort & codomain)
{
  if (domain.empty()) {
    throw IncorrectUsageException("function sort needs a non-empty domain");
  }
  for (const Sort & d : domain) {
    if (d.is(SortKind::FUNCTION)) {
      throw IncorrectUsageException(
          "function sort domain cannot contain a function sort: "
          + d.to_string());
    }
  }
  if (codomain.is(SortKind::FUNCTION)) {
    throw IncorrectUsageException(
        "function sort codomain cannot be a function sort: "
        + codomain.to_string());
  }
  Node n;
  n.kind = SortKind::FUNCTION;
  n.params = domain;
  n.codomain = { codomain };
  return Sort(finish(std::move(n)));
}

Sort Sort::array(const Sort & index, const Sort & element)
{
  if (index.is(SortKind::FUNCTION) || element.is(SortKind::FUNCTION)) {
    throw IncorrectUsageException(
        "array index and element sorts cannot be function sorts");
  }
  Node n;
  n.kind = SortKind::ARRAY;
  n.params = { index, element };
  return Sort(finish(std::move(n)));
}

Sort Sort::uninterpreted(const std::string & name, uint64_t arity)
{
  if (name.empty()) {
    throw IncorrectUsageException("uninterpreted sort needs a name");
  }
  Node n;
  n.kind = SortKind::UNINTERPRETED;
  n.name = name;
  n.arity = arity;
  return Sort(finish(std::move(n)));
}

SortKind Sort::kind() const { return node_->kind; }

uint64_t Sort::width() const
{
  if (!is(SortKind::BV)) {
    throw IncorrectUsageException("width() on non-BV sort " + to_string());
  }
  return node_->width;
}

const SortVec & Sort::domain() const
{
  if (!is(SortKind::FUNCTION)) {
    throw IncorrectUsageException("domain() on non-function sort "
                                  + to_string());
  }
  return node_->params;
}

const Sort & Sort::codomain() const
{
  if (!is(SortKind::FUNCTION)) {
    throw IncorrectUsageException("codomain() on non-function sort "
                                  + to_string());
  }
  return node_->codomain.front();
}

const Sort & Sort::index_sort() const
{
  if (!is(SortKind::ARRAY)) {
    throw IncorrectUsageException("index_sort() on non-array sort "
                                  + to_string());
  }
  return node_->params[0];
}

const Sort & Sort::element_sort() const
{
  if (!is(SortKind::ARRAY)) {
    throw IncorrectUsageException("element_sort() on non-array sort "
                                  + to_string());
  }
  return node_->params[1];
}

const std::string & Sort::name() const
{
  if (!is(SortKind::UNINTERPRETED)) {
    throw IncorrectUsageException("name() on interpreted sort "
                                  + to_string());
  }
  return node_->name;
}

uint64_t Sort::arity() const
{
  if (!is(SortKind::UNINTERPRETED)) {
    throw IncorrectUsageException("arity() on interpreted sort "
                                  + to_string());
  }
  return node_->arity;
}

std::size_t Sort::hash() const { return node_->hash; }

std::string Sort::to_string() const
{
  std::ostringstream out;
  switch (kind()) {
    case SortKind::BOOL: out << "Bool"; break;
    case SortKind::INT: out << "Int"; break;
    case SortKind::REAL: out << "Real"; break;
    case SortKind::BV: out << "(_ BitVec " << node_->width << ")"; break;
    case SortKind::ARRAY:
      out << "(Array " << node_->params[0] << " " << node_->params[1] << ")";
      break;
    case SortKind::FUNCTION:
      out << "(->";
      for (const Sort & d : node_->params) out << " " << d;
      out << " " << node_->codomain.front() << ")";
      break;
    case SortKind::UNINTERPRETED: out << node_->name; break;
  }
  return out.str();
}

bool operator==(const Sort & a, const Sort & b)
{
  if (a.node_ == b.node_) return true;
  const Sort::Node & x = *a.node_;
  const Sort::Node & y = *b.node_;
  return x.hash == y.hash && x.kind == y.kind && x.width == y.width
         && x.params == y.params && x.codomain == y.codomain
         && x.name == y.name && x.arity == y.arity;
}

std::ostream & operator<<(std::ostream & os, const Sort & s)
{
  return os << s.to_string();
}

}  // namespace smt
