#pragma once

#include "elp/asp.hpp"

#include <chrono>
#include <string>
#include <vector>

namespace elp {

/// How to run an external ASP solver. The command is handed to `/bin/sh -c`
/// and receives the program as plain ASP text on standard input. It must
/// print zero or more blocks of the form
///
///     Answer: <k> [anything]
///     <space-separated literals>
///
/// and exit with one of the configured statuses.
struct SolverAdapterConfig {
    std::string command;
    std::chrono::duration<double> timeout{60.0};
    std::vector<int> sat_exit_codes{10};
    std::vector<int> unsat_exit_codes{20};

    /// Throws ConfigurationError when the command is empty or the timeout is
    /// not positive.
    void validate() const;
};

/// Environment variable read by the CLI for the default external command.
inline constexpr const char* kExternalSolverEnv = "ELPSOLVE_ASP_SOLVER";

class ExternalSolverError : public Error {
public:
    using Error::Error;
};

/// The adapter is missing or unusable (empty command, command not found).
class ConfigurationError : public ExternalSolverError {
public:
    using ExternalSolverError::ExternalSolverError;
};

/// The solver ran but failed: unexpected exit status or a signal.
class ProcessError : public ExternalSolverError {
public:
    ProcessError(const std::string& msg, int status) : ExternalSolverError(msg), status_(status) {}
    int status() const { return status_; }

private:
    int status_;
};

class TimeoutError : public ExternalSolverError {
public:
    using ExternalSolverError::ExternalSolverError;
};

/// The solver's output does not follow the answer protocol.
class OutputFormatError : public ExternalSolverError {
public:
    using ExternalSolverError::ExternalSolverError;
};

/// Parses solver output into belief sets (not normalized). Throws
/// OutputFormatError on malformed blocks.
BeliefSets parse_solver_answers(const std::string& output);

/// AS(p) computed by the configured external solver. Nested negation is
/// eliminated before emission and the fresh atoms are projected away.
AnswerSetResult external_answer_sets(const Program& p, const SolverAdapterConfig& cfg);

class ExternalEngine final : public AnswerSetEngine {
public:
    explicit ExternalEngine(SolverAdapterConfig cfg);

    AnswerSetResult solve(const Program& p) override;
    std::unique_ptr<AnswerSetEngine> clone() const override;
    std::string describe() const override;

private:
    SolverAdapterConfig cfg_;
};

} // namespace elp
