#include "elp/external.hpp"

#include "elp/parser.hpp"

#include <algorithm>
#include <cerrno>
#include <csignal>
#include <cstring>
#include <sstream>

#include <fcntl.h>
#include <poll.h>
#include <pthread.h>
#include <sys/wait.h>
#include <time.h>
#include <unistd.h>

namespace elp {

void SolverAdapterConfig::validate() const {
    if (command.find_first_not_of(" \t\r\n") == std::string::npos) {
        throw ConfigurationError("no external solver command configured");
    }
    if (!(timeout.count() > 0)) {
        throw ConfigurationError("external solver timeout must be positive");
    }
}

namespace {

struct ProcessOutput {
    bool exited = false;
    int exit_code = 0;
    int signal = 0;
    std::string out;
    std::string err;
};

class Fd {
public:
    Fd() = default;
    explicit Fd(int fd) : fd_(fd) {}
    Fd(const Fd&) = delete;
    Fd& operator=(const Fd&) = delete;
    Fd(Fd&& o) noexcept : fd_(o.release()) {}
    Fd& operator=(Fd&& o) noexcept {
        reset(o.release());
        return *this;
    }
    ~Fd() { reset(); }

    int get() const { return fd_; }
    int release() {
        int f = fd_;
        fd_ = -1;
        return f;
    }
    void reset(int f = -1) {
        if (fd_ >= 0) {
            ::close(fd_);
        }
        fd_ = f;
    }

private:
    int fd_ = -1;
};

std::pair<Fd, Fd> make_pipe() {
    int fds[2];
    if (::pipe2(fds, O_CLOEXEC) != 0) {
        throw ProcessError(std::string("pipe: ") + std::strerror(errno), -1);
    }
    return {Fd(fds[0]), Fd(fds[1])};
}

// Blocks SIGPIPE for the calling thread while writing to the child and
// discards any SIGPIPE raised meanwhile.
class SigpipeGuard {
public:
    SigpipeGuard() {
        sigset_t set;
        sigemptyset(&set);
        sigaddset(&set, SIGPIPE);
        pthread_sigmask(SIG_BLOCK, &set, &old_);
    }
    ~SigpipeGuard() {
        sigset_t set;
        sigemptyset(&set);
        sigaddset(&set, SIGPIPE);
        timespec zero{0, 0};
        while (sigtimedwait(&set, nullptr, &zero) > 0) {
        }
        pthread_sigmask(SIG_SETMASK, &old_, nullptr);
    }

private:
    sigset_t old_;
};

ProcessOutput run_process(const std::string& command, const std::string& input, std::chrono::duration<double> timeout) {
    auto [in_r, in_w] = make_pipe();
    auto [out_r, out_w] = make_pipe();
    auto [err_r, err_w] = make_pipe();

    pid_t pid = ::fork();
    if (pid < 0) {
        throw ProcessError(std::string("fork: ") + std::strerror(errno), -1);
    }
    if (pid == 0) {
        ::setpgid(0, 0);
        ::dup2(in_r.get(), STDIN_FILENO);
        ::dup2(out_w.get(), STDOUT_FILENO);
        ::dup2(err_w.get(), STDERR_FILENO);
        ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        ::_exit(127);
    }
    ::setpgid(pid, pid);
    in_r.reset();
    out_w.reset();
    err_w.reset();

    SigpipeGuard guard;
    ::fcntl(in_w.get(), F_SETFL, O_NONBLOCK);
    std::size_t written = 0;
    if (input.empty()) {
        in_w.reset();
    }

    ProcessOutput result;
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    char buf[8192];
    while (out_r.get() >= 0 || err_r.get() >= 0) {
        auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
        if (left.count() <= 0) {
            ::kill(-pid, SIGKILL);
            ::waitpid(pid, nullptr, 0);
            throw TimeoutError("external solver timed out after " + std::to_string(timeout.count()) + " s");
        }
        pollfd fds[3];
        nfds_t count = 0;
        auto add = [&](const Fd& fd, short events) {
            if (fd.get() >= 0) {
                fds[count++] = pollfd{fd.get(), events, 0};
            }
        };
        add(in_w, POLLOUT);
        add(out_r, POLLIN);
        add(err_r, POLLIN);
        int rc = ::poll(fds, count, static_cast<int>(std::min<long long>(left.count(), 1000)));
        if (rc < 0) {
            if (errno == EINTR) {
                continue;
            }
            ::kill(-pid, SIGKILL);
            ::waitpid(pid, nullptr, 0);
            throw ProcessError(std::string("poll: ") + std::strerror(errno), -1);
        }
        for (nfds_t i = 0; i < count; ++i) {
            if (fds[i].revents == 0) {
                continue;
            }
            if (fds[i].fd == in_w.get()) {
                ssize_t n = ::write(in_w.get(), input.data() + written, input.size() - written);
                if (n > 0) {
                    written += static_cast<std::size_t>(n);
                }
                if ((n < 0 && errno != EAGAIN) || written == input.size()) {
                    in_w.reset();
                }
            } else {
                Fd& src = fds[i].fd == out_r.get() ? out_r : err_r;
                std::string& dst = fds[i].fd == out_r.get() ? result.out : result.err;
                ssize_t n = ::read(src.get(), buf, sizeof buf);
                if (n > 0) {
                    dst.append(buf, static_cast<std::size_t>(n));
                } else if (n == 0 || errno != EAGAIN) {
                    src.reset();
                }
            }
        }
    }
    in_w.reset();
    int status = 0;
    while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    if (WIFEXITED(status)) {
        result.exited = true;
        result.exit_code = WEXITSTATUS(status);
    } else if (WIFSIGNALED(status)) {
        result.signal = WTERMSIG(status);
    }
    return result;
}

bool contains(const std::vector<int>& codes, int code) {
    return std::find(codes.begin(), codes.end(), code) != codes.end();
}

std::string first_line(const std::string& s) {
    auto pos = s.find('\n');
    return pos == std::string::npos ? s : s.substr(0, pos);
}

} // namespace

BeliefSets parse_solver_answers(const std::string& output) {
    BeliefSets sets;
    std::istringstream in(output);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.rfind("Answer:", 0) != 0) {
            continue;
        }
        std::string atoms;
        if (!std::getline(in, atoms)) {
            throw OutputFormatError("line " + std::to_string(line_no) + ": 'Answer:' without a model line");
        }
        ++line_no;
        if (atoms.rfind("Answer:", 0) == 0) {
            throw OutputFormatError("line " + std::to_string(line_no) + ": missing model line");
        }
        std::vector<Literal> lits;
        std::istringstream tokens(atoms);
        std::string tok;
        while (tokens >> tok) {
            Program one;
            try {
                one = parse_asp(tok + ".");
            } catch (const ParseError& e) {
                throw OutputFormatError("line " + std::to_string(line_no) + ": cannot parse literal '" + tok +
                                        "': " + e.detail());
            }
            if (one.rules.size() != 1 || one.rules[0].head.size() != 1 || !one.rules[0].body.empty()) {
                throw OutputFormatError("line " + std::to_string(line_no) + ": not a literal: '" + tok + "'");
            }
            lits.push_back(one.rules[0].head[0]);
        }
        try {
            sets.emplace_back(std::move(lits));
        } catch (const ContractError& e) {
            throw OutputFormatError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return sets;
}

AnswerSetResult external_answer_sets(const Program& p, const SolverAdapterConfig& cfg) {
    cfg.validate();
    if (!p.is_asp()) {
        throw ContractError("external_answer_sets: program contains subjective literals");
    }
    auto nested = remove_nested_negation(p);
    const std::string text = emit_asp(nested.program);

    ProcessOutput run = run_process(cfg.command, text, cfg.timeout);
    if (!run.exited) {
        throw ProcessError("external solver killed by signal " + std::to_string(run.signal), -run.signal);
    }
    if (run.exit_code == 127 || run.exit_code == 126) {
        throw ConfigurationError("external solver command could not be run (status " +
                                 std::to_string(run.exit_code) + "): " + first_line(run.err));
    }
    const bool sat = contains(cfg.sat_exit_codes, run.exit_code);
    const bool unsat = contains(cfg.unsat_exit_codes, run.exit_code);
    if (!sat && !unsat) {
        throw ProcessError("external solver exited with status " + std::to_string(run.exit_code) + ": " +
                               first_line(run.err),
                           run.exit_code);
    }

    BeliefSets raw = parse_solver_answers(run.out);
    if (!sat && !raw.empty()) {
        throw OutputFormatError("solver reported unsatisfiable but printed answer sets");
    }

    AnswerSetResult result;
    result.source = EngineSource::external;
    for (auto& s : raw) {
        std::vector<Literal> kept;
        for (const auto& l : s) {
            if (!nested.fresh.count(l)) {
                kept.push_back(l);
            }
        }
        result.sets.emplace_back(std::move(kept));
    }
    normalize(result.sets);
    return result;
}

ExternalEngine::ExternalEngine(SolverAdapterConfig cfg) : cfg_(std::move(cfg)) { cfg_.validate(); }

AnswerSetResult ExternalEngine::solve(const Program& p) { return external_answer_sets(p, cfg_); }

std::unique_ptr<AnswerSetEngine> ExternalEngine::clone() const { return std::make_unique<ExternalEngine>(cfg_); }

std::string ExternalEngine::describe() const { return "external:" + cfg_.command; }

} // namespace elp
