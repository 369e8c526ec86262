#include "sat/external.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>

#include "error.hpp"

extern char** environ;

namespace tmig::sat {
namespace {

class TempFile {
 public:
  explicit TempFile(const std::string& contents) {
    std::string dir = std::filesystem::temp_directory_path().string();
    std::string tmpl = dir + "/tmig-XXXXXX";
    std::vector<char> buf(tmpl.begin(), tmpl.end());
    buf.push_back('\0');
    const int fd = ::mkstemp(buf.data());
    if (fd < 0) throw Error(Errc::Io, "cannot create temporary instance file");
    path_ = buf.data();
    std::size_t off = 0;
    while (off < contents.size()) {
      const ssize_t n = ::write(fd, contents.data() + off, contents.size() - off);
      if (n <= 0) {
        ::close(fd);
        throw Error(Errc::Io, "cannot write temporary instance file");
      }
      off += static_cast<std::size_t>(n);
    }
    ::close(fd);
  }
  ~TempFile() { ::unlink(path_.c_str()); }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t b = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

}  // namespace

std::vector<std::string> split_command(std::string_view command) {
  std::vector<std::string> out;
  for (auto tok : split_ws(command)) out.emplace_back(tok);
  return out;
}

SolveResult interpret_solver_output(std::string_view output, const Instance& instance, bool crashed) {
  std::optional<Status> status;
  Assignment model(instance.num_vars);
  bool have_values = false;
  std::optional<std::uint64_t> cost;
  std::size_t pos = 0;
  while (pos < output.size()) {
    std::size_t nl = output.find('\n', pos);
    if (nl == std::string_view::npos) nl = output.size();
    const auto toks = split_ws(output.substr(pos, nl - pos));
    pos = nl + 1;
    if (toks.empty()) continue;
    if (toks[0] == "s") {
      std::string rest;
      for (std::size_t i = 1; i < toks.size(); ++i) rest += (i > 1 ? " " : "") + std::string(toks[i]);
      if (rest == "SATISFIABLE")
        status = Status::Sat;
      else if (rest == "UNSATISFIABLE")
        status = Status::Unsat;
      else if (rest == "OPTIMUM FOUND")
        status = Status::Optimal;
      else if (rest == "UNKNOWN")
        status = Status::Timeout;
      else
        throw Error(Errc::UnparsableOutput, "unrecognised status line 's " + rest + "'");
    } else if (toks[0] == "o" && toks.size() == 2) {
      std::uint64_t c = 0;
      auto [ptr, ec] = std::from_chars(toks[1].data(), toks[1].data() + toks[1].size(), c);
      if (ec != std::errc() || ptr != toks[1].data() + toks[1].size())
        throw Error(Errc::UnparsableOutput, "bad cost line 'o " + std::string(toks[1]) + "'");
      cost = c;
    } else if (toks[0] == "v") {
      have_values = true;
      // MaxSAT evaluation format: one 0/1 string indexed by variable.
      if (toks.size() == 2 && toks[1].size() == instance.num_vars && toks[1].size() > 1 &&
          toks[1].find_first_not_of("01") == std::string_view::npos) {
        for (Var v = 1; v <= instance.num_vars; ++v) model.set(v, toks[1][v - 1] == '1');
        continue;
      }
      for (std::size_t i = 1; i < toks.size(); ++i) {
        long long lit = 0;
        auto [ptr, ec] = std::from_chars(toks[i].data(), toks[i].data() + toks[i].size(), lit);
        if (ec != std::errc() || ptr != toks[i].data() + toks[i].size())
          throw Error(Errc::UnparsableOutput, "bad value token '" + std::string(toks[i]) + "'");
        if (lit == 0) continue;
        const Var v = static_cast<Var>(lit < 0 ? -lit : lit);
        if (v > instance.num_vars) throw Error(Errc::UnparsableOutput, "value for unknown variable " + std::to_string(v));
        model.set(v, lit > 0);
      }
    }
  }
  if (!status) {
    if (crashed) throw Error(Errc::SolverCrashed, "external solver terminated abnormally without a result");
    throw Error(Errc::UnparsableOutput, "external solver printed no 's' line");
  }
  SolveResult result;
  result.status = *status;
  if (*status == Status::Sat || *status == Status::Optimal) {
    if (!have_values) throw Error(Errc::UnparsableOutput, "external solver reported a model but printed no 'v' lines");
    if (auto bad = first_violated(model, instance.hard))
      throw Error(Errc::AssignmentInvalid, "external solver model violates hard clause " + std::to_string(*bad));
    result.assignment = std::move(model);
    result.satisfied_soft = count_satisfied(result.assignment, instance.soft);
    result.externally_claimed = *status == Status::Optimal;
    result.claimed_cost = cost;
  }
  return result;
}

SolveResult run_external(const Instance& instance, const std::vector<std::string>& command, DimacsKind kind,
                         Deadline deadline) {
  if (command.empty()) throw Error(Errc::InvalidArgument, "empty solver command");
  TempFile file(emit_dimacs(instance, kind));

  int pipefd[2];
  if (::pipe(pipefd) != 0) throw Error(Errc::Io, "pipe() failed");
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, pipefd[1], STDOUT_FILENO);
  posix_spawn_file_actions_addclose(&actions, pipefd[0]);
  posix_spawn_file_actions_addclose(&actions, pipefd[1]);

  std::vector<std::string> args = command;
  args.push_back(file.path());
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);

  // Own process group, so a timeout also stops helpers started by wrappers.
  posix_spawnattr_t attr;
  posix_spawnattr_init(&attr);
  posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
  posix_spawnattr_setpgroup(&attr, 0);

  pid_t pid = 0;
  const int rc = ::posix_spawnp(&pid, argv[0], &actions, &attr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  posix_spawnattr_destroy(&attr);
  ::close(pipefd[1]);
  if (rc != 0) {
    ::close(pipefd[0]);
    throw Error(Errc::SolverCrashed, "cannot start external solver '" + command[0] + "'");
  }

  std::string output;
  char buf[4096];
  bool timed_out = false;
  while (true) {
    pollfd pfd{pipefd[0], POLLIN, 0};
    int wait_ms = -1;
    if (deadline.at) {
      const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(*deadline.at - Clock::now()).count();
      if (left <= 0) {
        timed_out = true;
        break;
      }
      wait_ms = static_cast<int>(std::min<long long>(left, 1000));
    }
    const int pr = ::poll(&pfd, 1, wait_ms);
    if (pr < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (pr == 0) continue;
    const ssize_t n = ::read(pipefd[0], buf, sizeof buf);
    if (n <= 0) break;
    output.append(buf, static_cast<std::size_t>(n));
  }
  ::close(pipefd[0]);
  if (timed_out) ::kill(-pid, SIGKILL);
  int wstatus = 0;
  ::waitpid(pid, &wstatus, 0);
  if (timed_out) {
    SolveResult r;
    r.status = Status::Timeout;
    return r;
  }
  const bool crashed = WIFSIGNALED(wstatus);
  return interpret_solver_output(output, instance, crashed);
}

}  // namespace tmig::sat
