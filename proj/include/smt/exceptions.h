#pragma once

#include <stdexcept>
#include <string>

namespace smt {

/** Base class of every error raised by this library. */
class SmtException : public std::runtime_error
{
 public:
  explicit SmtException(const std::string & msg) : std::runtime_error(msg) {}
};

/** A feature that is outside the supported fragment or not implemented by a
 *  backend. */
class NotImplementedException : public SmtException
{
 public:
  explicit NotImplementedException(const std::string & msg)
      : SmtException(msg)
  {
  }
};

/** The caller broke a precondition: bad sort, arity, indices, foreign terms,
 *  over-popping, querying a model that does not exist, ... */
class IncorrectUsageException : public SmtException
{
 public:
  explicit IncorrectUsageException(const std::string & msg)
      : SmtException(msg)
  {
  }
};

/** The underlying solver failed: error reply, crash, timeout, or a reply we
 *  could not understand. */
class InternalSolverException : public SmtException
{
 public:
  explicit InternalSolverException(const std::string & msg)
      : SmtException(msg)
  {
  }
};

}  // namespace smt
