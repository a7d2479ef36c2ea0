#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace risfox {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& key, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + (key.empty() ? "" : " [" + key + "]") +
                             ": " + msg),
          line_(line),
          key_(key) {}
    std::size_t line() const { return line_; }
    const std::string& key() const { return key_; }

private:
    std::size_t line_;
    std::string key_;
};

/// Collects every violated invariant instead of stopping at the first.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> problems)
        : std::runtime_error(join(problems)), problems_(std::move(problems)) {}
    const std::vector<std::string>& problems() const { return problems_; }

private:
    static std::string join(const std::vector<std::string>& p) {
        std::string out = "invalid configuration:";
        for (const auto& s : p) out += "\n  - " + s;
        return out;
    }
    std::vector<std::string> problems_;
};

}  // namespace risfox
