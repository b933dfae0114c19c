#pragma once

#include <stdexcept>
#include <string>

namespace qbox {

enum class Errc {
  invalid_argument = 1,
  domain = 2,
  overflow = 3,
  no_convergence = 4,
  internal = 5,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace qbox
