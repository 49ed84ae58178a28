#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ltl/cnf.hpp"

namespace ltl {

using Duration = std::chrono::duration<double>;

/// Sentinel for "no time limit".
inline constexpr Duration kNoTimeout = Duration::max();

struct SolverVerdict {
  enum class Status { Sat, Unsat, Timeout };
  Status status = Status::Unsat;
  /// Total assignment for Sat (index 0 unused); empty otherwise.
  std::vector<bool> model;
  Duration elapsed{0};

  bool sat() const { return status == Status::Sat; }
};

std::string_view to_string(SolverVerdict::Status status);

/// A satisfiability oracle. Every Sat verdict is re-checked clause by
/// clause before it is returned (SolverFailure otherwise).
class SatBackend {
 public:
  virtual ~SatBackend() = default;
  SolverVerdict solve(const CnfInstance& instance, Duration timeout = kNoTimeout);
  virtual std::string name() const = 0;

 protected:
  virtual SolverVerdict run(const CnfInstance& instance, Duration timeout) = 0;
};

/// In-process CDCL solver with cooperative deadline checks.
class EmbeddedBackend final : public SatBackend {
 public:
  std::string name() const override { return "embedded"; }

 protected:
  SolverVerdict run(const CnfInstance& instance, Duration timeout) override;
};

/// Runs `executable <file.cnf>` and reads the `s SATISFIABLE` / `v ...`
/// output convention. The process is killed when the timeout expires.
class DimacsProcessBackend final : public SatBackend {
 public:
  explicit DimacsProcessBackend(std::string executable) : executable_(std::move(executable)) {}
  std::string name() const override { return "dimacs:" + executable_; }

 protected:
  SolverVerdict run(const CnfInstance& instance, Duration timeout) override;

 private:
  std::string executable_;
};

/// `embedded` or `dimacs:<path>`.
std::unique_ptr<SatBackend> make_backend(std::string_view spec);

/// Solves with the embedded backend.
SolverVerdict solve(const CnfInstance& instance, Duration timeout = kNoTimeout);

}  // namespace ltl
