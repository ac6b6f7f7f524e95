#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "drillboom/rl/policy.hpp"

namespace drillboom::rl {

/**
 * Binary policy checkpoint, little-endian:
 *
 *   char[8]  magic "DBPOLICY"
 *   u32      format version (1)
 *   u32      policy kind (0 gaussian, 1 deterministic)
 *   u32      joint representation (0 dh, 1 cartesian)
 *   u32      task representation (0 preview, 1 non-preview)
 *   u32      hidden activation (0 relu, 1 gelu, 2 tanh)
 *   u32      n, then u32[n] layer sizes
 *   per affine layer: f64[out*in] weights row-major, f64[out] biases
 *   u32      observation size m, f64[m] offset, f64[m] scale
 *   f64[8]   action bound a_max
 *   f64      exploration noise
 */
inline constexpr char kCheckpointMagic[8] = {'D', 'B', 'P', 'O', 'L', 'I', 'C', 'Y'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

void write_checkpoint(std::ostream& out, const Policy& policy);
Policy read_checkpoint(std::istream& in);

void save_checkpoint(const std::string& path, const Policy& policy);
/// Throws std::runtime_error for missing files, bad magic or unsupported versions.
Policy load_checkpoint(const std::string& path);

}  // namespace drillboom::rl
