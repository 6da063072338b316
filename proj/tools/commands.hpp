#pragma once

#include "cifs/geometry.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cifs::cli {

enum ExitCode : int { kSuccess = 0, kError = 1, kViolation = 2 };

/// Parses `args` (without the program name), runs the subcommand and writes its outputs.
/// Reports go to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Binary PGM (P5) of the viewport [-0.05, 1.05]^2, one dark pixel per point.
std::vector<std::uint8_t> render_pgm(const std::vector<ComplexPoint> &points, int width);

/// Writes render_pgm(points, width) to `path`. Throws std::runtime_error naming the path on I/O failure.
void write_render(const std::vector<ComplexPoint> &points, int width, const std::string &path);

} // namespace cifs::cli
