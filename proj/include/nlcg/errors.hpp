#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nlcg {

// Parameter or config rejected; carries every violation found, not just the first.
class ValidationError : public std::runtime_error {
  public:
    explicit ValidationError(std::vector<std::string> violations)
        : std::runtime_error(join(violations)), violations_(std::move(violations)) {}
    explicit ValidationError(const std::string& msg)
        : ValidationError(std::vector<std::string>{msg}) {}
    const std::vector<std::string>& violations() const { return violations_; }

  private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out;
        for (const auto& s : v) {
            if (!out.empty()) out += "; ";
            out += s;
        }
        return out;
    }
    std::vector<std::string> violations_;
};

// Exponent bookkeeping hit a degenerate denominator; never reported as a silent infinity.
class DegenerateLedgerError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// NaN/Inf or an exhausted numerical budget inside a solver.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace nlcg
