#pragma once

#include <stdexcept>
#include <string>

namespace hopfalg {

// Every library failure carries a stable kind tag (e.g. "BadUnit") and, where
// meaningful, a witness naming the offending basis elements.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message, std::string witness = {})
        : std::runtime_error(kind + ": " + message), kind_(std::move(kind)), witness_(std::move(witness)) {}

    const std::string& kind() const noexcept { return kind_; }
    const std::string& witness() const noexcept { return witness_; }

private:
    std::string kind_;
    std::string witness_;
};

}  // namespace hopfalg
