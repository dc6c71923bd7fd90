#pragma once

// CSV and SVG renderings. All output is byte-for-byte deterministic for
// identical inputs (fixed number formatting, no timestamps).

#include <cstddef>
#include <string>
#include <utility>

#include "intstab/paving.hpp"
#include "intstab/stability.hpp"

namespace intstab {

/// One row per cell, row-major: m1_lo,m1_hi,m2_lo,m2_hi,...,status,q,alpha
std::string paving_csv(const PavingResult& result);
/// Green rectangles for proven cells, red for the rest. Two-parameter
/// domains are drawn as a plane, one-parameter domains as a strip.
std::string paving_svg(const PavingResult& result);

/// One row per step k: k, z{i}_lo..., z{i}_hi..., fc{i}_lo..., fc{i}_hi...
/// in centred coordinates (offsets from the centre).
std::string trace_csv(const CentredTrace& trace);

/// Nested boxes in absolute coordinates projected on the coordinate pair
/// `proj` (zero-based): the initial box, every fc_k, and for invariance runs
/// the intermediate stage images. One-dimensional systems are drawn as one
/// bar per step. Throws BadProjection for out-of-range or equal indices.
std::string trace_svg(const StabilityReport& report, std::pair<std::size_t, std::size_t> proj = {0, 1});

/// Writes `content` to `path`; throws IOError.
void write_file(const std::string& path, const std::string& content);

}  // namespace intstab
