#pragma once

#include <ostream>
#include <string>

namespace smt {

enum ResultStatus
{
  SAT = 0,
  UNSAT,
  UNKNOWN
};

/** Outcome of check_sat / check_sat_assuming. Only UNKNOWN results carry an
 *  explanation. */
class Result
{
 public:
  Result() : Result(UNKNOWN) {}
  explicit Result(ResultStatus s, std::string explanation = "");

  ResultStatus status() const { return status_; }
  const std::string & explanation() const { return explanation_; }

  bool is_sat() const { return status_ == SAT; }
  bool is_unsat() const { return status_ == UNSAT; }
  bool is_unknown() const { return status_ == UNKNOWN; }

  /** "sat", "unsat" or "unknown", as an SMT-LIB solver prints it. */
  std::string to_string() const;

  friend bool operator==(const Result & a, const Result & b)
  {
    return a.status_ == b.status_;
  }

 private:
  ResultStatus status_;
  std::string explanation_;
};

std::ostream & operator<<(std::ostream & os, const Result & r);

}  // namespace smt
