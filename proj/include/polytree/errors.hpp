#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polytree {

// Recoverable failures caused by bad input data or infeasible requests.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A broken internal invariant; indicates a bug rather than bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

#define POLYTREE_DEFINE_ERROR(Name)         \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  }

POLYTREE_DEFINE_ERROR(InvalidGraph);
POLYTREE_DEFINE_ERROR(NotAPolytree);
POLYTREE_DEFINE_ERROR(InvalidCpdag);
POLYTREE_DEFINE_ERROR(LimitExceeded);
POLYTREE_DEFINE_ERROR(ParseError);
POLYTREE_DEFINE_ERROR(InvalidModel);
POLYTREE_DEFINE_ERROR(SingularModel);
POLYTREE_DEFINE_ERROR(EmptyGraph);
POLYTREE_DEFINE_ERROR(InfeasibleDegree);
POLYTREE_DEFINE_ERROR(InfeasibleConfig);
POLYTREE_DEFINE_ERROR(InvalidRho);
POLYTREE_DEFINE_ERROR(InsufficientSamples);
POLYTREE_DEFINE_ERROR(OrientationConflict);
POLYTREE_DEFINE_ERROR(DimensionMismatch);
POLYTREE_DEFINE_ERROR(EmptyEstimate);
POLYTREE_DEFINE_ERROR(EmptyUnion);
POLYTREE_DEFINE_ERROR(IoError);
POLYTREE_DEFINE_ERROR(InvalidArgument);

#undef POLYTREE_DEFINE_ERROR

class ConstantColumn : public Error {
 public:
  explicit ConstantColumn(std::size_t column)
      : Error("column " + std::to_string(column) + " has zero empirical variance"), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

class DegenerateVariance : public Error {
 public:
  DegenerateVariance(std::size_t node, const std::string& what)
      : Error("degenerate variance at node " + std::to_string(node) + ": " + what), node_(node) {}
  std::size_t node() const { return node_; }

 private:
  std::size_t node_;
};

}  // namespace polytree
