// Exception types shared by all nlfront modules.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nlfront {

// Raised when user-supplied specifications (kernel families, model
// coefficients, run configurations, ...) violate documented preconditions.
// Carries the full list of problems so callers can report them all at once.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> issues)
        : std::runtime_error(join(issues)), issues_(std::move(issues)) {}
    explicit ValidationError(const std::string& issue)
        : ValidationError(std::vector<std::string>{issue}) {}

    const std::vector<std::string>& issues() const { return issues_; }

private:
    static std::string join(const std::vector<std::string>& issues) {
        std::string all;
        for (const auto& s : issues) {
            if (!all.empty()) all += "; ";
            all += s;
        }
        return all.empty() ? std::string("validation failed") : all;
    }
    std::vector<std::string> issues_;
};

// Raised when a numerical run cannot continue (NaN fields, negativity far
// beyond roundoff, non-convergent iterations). Distinct from ValidationError
// so drivers can map the two to different exit codes.
class SolverAbort : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace nlfront
