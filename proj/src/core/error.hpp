#pragma once

#include <stdexcept>
#include <string>

namespace wwbnf {

enum class ErrorCode {
  InvalidArgument = 1,
  Domain = 2,
  NoConvergence = 3,
  Io = 4,
  Numeric = 5,
  Internal = 99,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorCode::InvalidArgument, what);
}

}  // namespace wwbnf
