#pragma once

#include <functional>
#include <optional>

#include "streamcut/error.hpp"

namespace streamcut::testing {

// The ErrorCode carried by the exception f throws, or nothing.
inline std::optional<ErrorCode> error_code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace streamcut::testing

#define CHECK_CODE(expr, code) \
  CHECK(::streamcut::testing::error_code_of([&] { (void)(expr); }) == (code))
