#include "smt/term.h"

#include "smt/exceptions.h"
#include "smt/result.h"
#include "smt/smtlib_printer.h"

namespace smt {

Result::Result(ResultStatus s, std::string explanation)
    : status_(s), explanation_(std::move(explanation))
{
  if (status_ != UNKNOWN && !explanation_.empty()) {
    throw IncorrectUsageException("only unknown results carry an explanation");
  }
}

std::string Result::to_string() const
{
  switch (status_) {
    case SAT: return "sat";
    case UNSAT: return "unsat";
    case UNKNOWN: return "unknown";
  }
  return "unknown";
}

std::ostream & operator<<(std::ostream & os, const Result & r)
{
  os << r.to_string();
  if (r.is_unknown() && !r.explanation().empty()) {
    os << " (" << r.explanation() << ")";
  }
  return os;
}

const std::string & TermNode::name() const
{
  if (!is_symbol()) {
    throw IncorrectUsageException("name() on a non-symbol term");
  }
  return name_;
}

const Value & TermNode::value() const
{
  if (!is_value()) {
    throw IncorrectUsageException("value() on a non-value term");
  }
  return *value_;
}

std::string TermNode::to_string() const { return print_term(*this); }

std::ostream & operator<<(std::ostream & os, const Term & t)
{
  if (!t) return os << "<null term>";
  return os << t->to_string();
}

}  // namespace smt
