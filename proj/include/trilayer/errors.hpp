#ifndef TRILAYER_ERRORS_HPP
#define TRILAYER_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace trilayer {

/// Thrown for bad user input: invalid configs, malformed JSON, bad options.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> problems);

    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    std::vector<std::string> problems_;
};

/// Thrown when a well-posed request has no numerically meaningful answer.
class NumericalError : public std::runtime_error {
public:
    enum class Kind {
        not_a_root,          ///< sigma does not satisfy the dispersion relation
        doubly_degenerate,   ///< both interface rows vanish identically
        indeterminate_ratio  ///< f vanishes at the interface
    };

    NumericalError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

}  // namespace trilayer

#endif  // TRILAYER_ERRORS_HPP
