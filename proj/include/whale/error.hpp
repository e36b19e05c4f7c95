#pragma once

#include <stdexcept>
#include <string>

namespace whale {

enum class Errc {
  invalid_argument,   // bad parameter combinations, out-of-range values
  degenerate_spread,  // all points identical, no usable bandwidth
  empty_selection,    // masking or selection produced nothing
  empty_witness,      // every point became a landmark
  invalid_filtration, // missing face, unsorted input, value regression
  io_error,           // file cannot be opened/read/written
  parse_error,        // file content malformed
  internal,           // invariant violation inside the library
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace whale
