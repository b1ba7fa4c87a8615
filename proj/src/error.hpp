#pragma once

#include <stdexcept>
#include <string>

namespace ringmap {

enum class errc {
    parse,       // malformed circuit/config text
    invalid,     // violated argument contract
    infeasible,  // physically unschedulable request
    verify,      // semantic equivalence failure
    io,          // file system failure
    overflow,    // exact arithmetic out of range
};

class error : public std::runtime_error {
  public:
    error(errc code, std::string message) : std::runtime_error(std::move(message)), code_(code) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string &message) {
    throw error(code, message);
}

}  // namespace ringmap
