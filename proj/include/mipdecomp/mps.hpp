#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "mipdecomp/mip_instance.hpp"

namespace mipdecomp {

/// Raised for malformed MPS input; carries the 1-based line number when known.
class MpsParseError : public std::runtime_error {
 public:
  MpsParseError(const std::string& message, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Free-format MPS: ROWS/COLUMNS/RHS required, RANGES/BOUNDS/OBJSENSE and
/// integer MARKER blocks optional. Whitespace-tokenized; fixed-format column
/// positions are not enforced.
MipInstance parse_mps(std::istream& in);
MipInstance parse_mps_string(const std::string& text);
MipInstance parse_mps_file(const std::string& path);

void write_mps(const MipInstance& instance, std::ostream& out);
std::string write_mps_string(const MipInstance& instance);
void write_mps_file(const MipInstance& instance, const std::string& path);

}  // namespace mipdecomp
