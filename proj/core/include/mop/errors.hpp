#pragma once

#include <stdexcept>
#include <string>

namespace mop {

/// Base class for all loud failures in the library. `kind()` is a stable
/// machine-readable tag; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// Elimination met a pivot block with condition beyond 1/tol: the leading
/// principal truncation with `blocks` block rows is numerically singular.
class SingularTruncation : public Error {
 public:
  SingularTruncation(int blocks, const std::string& msg)
      : Error("SingularTruncation", msg), blocks(blocks) {}
  int blocks;
};

class SingularLeadingBlock : public Error {
 public:
  explicit SingularLeadingBlock(const std::string& msg)
      : Error("SingularLeadingBlock", msg) {}
};

class InsufficientRows : public Error {
 public:
  explicit InsufficientRows(const std::string& msg)
      : Error("InsufficientRows", msg) {}
};

class NotMonic : public Error {
 public:
  explicit NotMonic(const std::string& msg) : Error("NotMonic", msg) {}
};

class MultiplicityMismatch : public Error {
 public:
  explicit MultiplicityMismatch(const std::string& msg)
      : Error("MultiplicityMismatch", msg) {}
};

class UnderResolvedQuadrature : public Error {
 public:
  explicit UnderResolvedQuadrature(const std::string& msg)
      : Error("UnderResolvedQuadrature", msg) {}
};

/// The jet matrix Pi_{k,N} is numerically singular: the Christoffel
/// transformation does not exist at this degree.
class SingularPi : public Error {
 public:
  SingularPi(int k, const std::string& msg) : Error("SingularPi", msg), k(k) {}
  int k;
};

class SingularPA : public Error {
 public:
  explicit SingularPA(const std::string& msg) : Error("SingularPA", msg) {}
};

class DivisionResidual : public Error {
 public:
  DivisionResidual(double residual, const std::string& msg)
      : Error("DivisionResidual", msg), residual(residual) {}
  double residual;
};

class DegreeWindow : public Error {
 public:
  explicit DegreeWindow(const std::string& msg) : Error("DegreeWindow", msg) {}
};

class DivergentDeformation : public Error {
 public:
  explicit DivergentDeformation(const std::string& msg)
      : Error("DivergentDeformation", msg) {}
};

/// A quantity that must be real after complex spectral algebra kept a
/// non-negligible imaginary part.
class NonRealResult : public Error {
 public:
  explicit NonRealResult(const std::string& msg)
      : Error("NonRealResult", msg) {}
};

}  // namespace mop
