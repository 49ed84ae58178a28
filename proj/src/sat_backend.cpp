#include "ltl/sat_backend.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "ltl/cdcl_solver.hpp"
#include "ltl/error.hpp"

namespace ltl {

namespace {

using Clock = std::chrono::steady_clock;

Clock::time_point deadline_after(Duration timeout) {
  const auto now = Clock::now();
  if (timeout >= Duration(1e9)) return Clock::time_point::max();
  return now + std::chrono::duration_cast<Clock::duration>(timeout);
}

/// Temporary file removed on destruction.
class TempFile {
 public:
  explicit TempFile(const char* suffix) {
    const char* dir = std::getenv("TMPDIR");
    path_ = std::string(dir && *dir ? dir : "/tmp") + "/ltlearn-XXXXXX" + suffix;
    std::vector<char> buf(path_.begin(), path_.end());
    buf.push_back('\0');
    const int fd = ::mkstemps(buf.data(), static_cast<int>(std::string_view(suffix).size()));
    if (fd < 0) throw SolverFailure("cannot create temporary file");
    ::close(fd);
    path_.assign(buf.data());
  }
  ~TempFile() { std::remove(path_.c_str()); }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace

std::string_view to_string(SolverVerdict::Status status) {
  switch (status) {
    case SolverVerdict::Status::Sat: return "SAT";
    case SolverVerdict::Status::Unsat: return "UNSAT";
    case SolverVerdict::Status::Timeout: return "TIMEOUT";
  }
  return "?";
}

SolverVerdict SatBackend::solve(const CnfInstance& instance, Duration timeout) {
  const auto start = Clock::now();
  SolverVerdict verdict = run(instance, timeout);
  verdict.elapsed = Clock::now() - start;
  if (verdict.sat()) {
    verdict.model.resize(static_cast<std::size_t>(instance.num_vars) + 1, false);
    if (!satisfies(instance, verdict.model))
      throw SolverFailure(name() + " returned a model that violates a clause");
  } else {
    verdict.model.clear();
  }
  return verdict;
}

SolverVerdict EmbeddedBackend::run(const CnfInstance& instance, Duration timeout) {
  CdclSolver solver;
  solver.reserve_vars(instance.num_vars);
  SolverVerdict verdict;
  for (const auto& c : instance.clauses) {
    if (!solver.add_clause(c)) {
      verdict.status = SolverVerdict::Status::Unsat;
      return verdict;
    }
  }
  switch (solver.solve(deadline_after(timeout))) {
    case CdclSolver::Result::Sat:
      verdict.status = SolverVerdict::Status::Sat;
      verdict.model = solver.model();
      break;
    case CdclSolver::Result::Unsat:
      verdict.status = SolverVerdict::Status::Unsat;
      break;
    case CdclSolver::Result::Unknown:
      verdict.status = SolverVerdict::Status::Timeout;
      break;
  }
  return verdict;
}

SolverVerdict DimacsProcessBackend::run(const CnfInstance& instance, Duration timeout) {
  TempFile input(".cnf");
  TempFile output(".out");
  {
    std::ofstream f(input.path());
    write_dimacs(f, instance);
  }
  const pid_t pid = ::fork();
  if (pid < 0) throw SolverFailure("fork failed");
  if (pid == 0) {
    const int fd = ::open(output.path().c_str(), O_WRONLY | O_TRUNC);
    if (fd >= 0) {
      ::dup2(fd, STDOUT_FILENO);
      ::close(fd);
    }
    const int null = ::open("/dev/null", O_WRONLY);
    if (null >= 0) ::dup2(null, STDERR_FILENO);
    ::execl(executable_.c_str(), executable_.c_str(), input.path().c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }

  const auto deadline = deadline_after(timeout);
  int status = 0;
  bool timed_out = false;
  while (true) {
    const pid_t r = ::waitpid(pid, &status, WNOHANG);
    if (r == pid) break;
    if (r < 0) throw SolverFailure("waitpid failed");
    if (Clock::now() >= deadline) {
      ::kill(pid, SIGKILL);
      ::waitpid(pid, &status, 0);
      timed_out = true;
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(1));
  }
  SolverVerdict verdict;
  if (timed_out) {
    verdict.status = SolverVerdict::Status::Timeout;
    return verdict;
  }
  if (WIFEXITED(status) && WEXITSTATUS(status) == 127)
    throw SolverFailure("cannot launch external solver '" + executable_ + "'");

  std::ifstream f(output.path());
  std::string line;
  bool answered = false;
  std::vector<bool> model(static_cast<std::size_t>(instance.num_vars) + 1, false);
  while (std::getline(f, line)) {
    if (line.rfind("s ", 0) == 0) {
      if (line.find("UNSATISFIABLE") != std::string::npos) {
        verdict.status = SolverVerdict::Status::Unsat;
      } else if (line.find("SATISFIABLE") != std::string::npos) {
        verdict.status = SolverVerdict::Status::Sat;
      } else {
        verdict.status = SolverVerdict::Status::Timeout;
      }
      answered = true;
    } else if (line.rfind("v ", 0) == 0) {
      std::istringstream ss(line.substr(2));
      long lit;
      while (ss >> lit) {
        const auto v = static_cast<std::size_t>(std::labs(lit));
        if (lit != 0 && v < model.size()) model[v] = lit > 0;
      }
    }
  }
  if (!answered) throw SolverFailure("external solver '" + executable_ + "' printed no 's' line");
  if (verdict.sat()) verdict.model = std::move(model);
  return verdict;
}

std::unique_ptr<SatBackend> make_backend(std::string_view spec) {
  if (spec == "embedded") return std::make_unique<EmbeddedBackend>();
  if (spec.rfind("dimacs:", 0) == 0 && spec.size() > 7)
    return std::make_unique<DimacsProcessBackend>(std::string(spec.substr(7)));
  throw Error("unknown solver '" + std::string(spec) + "' (expected embedded or dimacs:<path>)");
}

SolverVerdict solve(const CnfInstance& instance, Duration timeout) {
  EmbeddedBackend backend;
  return backend.solve(instance, timeout);
}

}  // namespace ltl
