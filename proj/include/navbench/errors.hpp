#pragma once

#include <stdexcept>
#include <string>

namespace navbench {

// Base for all toolkit errors. `code()` is a stable machine-readable tag;
// the CLI surfaces it in error records on stderr.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line)
      : Error("parse_error", "line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class InvariantError : public Error {
 public:
  explicit InvariantError(const std::string& invariant)
      : Error("invariant_error", "violated invariant: " + invariant) {}
};

class SteppedAfterDone : public Error {
 public:
  SteppedAfterDone() : Error("stepped_after_done", "step() called on a finished simulation") {}
};

class StartNotNavigable : public Error {
 public:
  StartNotNavigable() : Error("start_not_navigable", "start pose is not navigable") {}
};

class FromNotNavigable : public Error {
 public:
  FromNotNavigable() : Error("from_not_navigable", "geodesic query origin is not navigable") {}
};

class Unreachable : public Error {
 public:
  Unreachable() : Error("unreachable", "no traversable path to target") {}
};

class FollowerStuck : public Error {
 public:
  explicit FollowerStuck(int cap)
      : Error("follower_stuck", "path follower hit action cap (" + std::to_string(cap) + ")") {}
};

class LegUnreachable : public Error {
 public:
  explicit LegUnreachable(int leg)
      : Error("leg_unreachable",
              "no traversable path for leg " + std::to_string(leg) + " -> " + std::to_string(leg + 1)),
        leg_(leg) {}
  int leg() const { return leg_; }

 private:
  int leg_;
};

class UnknownNodeId : public Error {
 public:
  explicit UnknownNodeId(int id)
      : Error("unknown_node_id", "node id " + std::to_string(id) + " not in graph") {}
};

class StartMismatch : public Error {
 public:
  StartMismatch() : Error("start_mismatch", "first position is more than 0.5m from the start node") {}
};

class EmptyDataset : public Error {
 public:
  EmptyDataset() : Error("empty_dataset", "operation requires a non-empty dataset") {}
};

class NonpositiveReference : public Error {
 public:
  NonpositiveReference() : Error("nonpositive_reference", "geodesic reference length must be > 0") {}
};

class EmptyInput : public Error {
 public:
  explicit EmptyInput(const std::string& what) : Error("empty_input", what + " must be non-empty") {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& stage)
      : Error("dimension_mismatch", "dimension mismatch in " + stage) {}
};

class NonFiniteGradient : public Error {
 public:
  NonFiniteGradient() : Error("non_finite_gradient", "gradient check produced a non-finite value") {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error("io_error", message) {}
};

}  // namespace navbench
