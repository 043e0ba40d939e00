#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace famheight {

/// Malformed input: unparsable polynomial text, bad config, arity mismatch.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A well-formed request that cannot be carried out.
class ComputationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameter rejected by a good-locus guard.
class BadParameter : public ComputationError {
public:
    BadParameter(const std::string& guard, const std::string& tau)
        : ComputationError("bad parameter t=" + tau + ": guard '" + guard + "' vanishes"),
          guard_(guard) {}
    const std::string& guard() const noexcept { return guard_; }

private:
    std::string guard_;
};

/// Size guard tripped during an iteration; carries the partial height sequence.
class BudgetExceeded : public ComputationError {
public:
    BudgetExceeded(const std::string& what, std::vector<double> partial)
        : ComputationError("budget exceeded: " + what), partial_(std::move(partial)) {}
    const std::vector<double>& partial_sequence() const noexcept { return partial_; }

private:
    std::vector<double> partial_;
};

}  // namespace famheight
