#pragma once

#include <stdexcept>
#include <string>

namespace epitopic {

// Single exception type for contract violations and I/O failures.
// Messages name the operation and the offending value so CLI users can act
// on them without a debugger.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

inline void require(bool cond, const std::string& msg) {
    if (!cond) fail(msg);
}

}  // namespace epitopic
