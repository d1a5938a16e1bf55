#pragma once

// Serialization: the chaos-document JSON schema (grid plus degree-keyed
// nested arrays of [re, im] pairs), reduction-step documents, deterministic
// report emitters (floats always at 17 significant digits), CSV writers, and
// plain file I/O.
//
// Error conventions: malformed JSON raises std::runtime_error prefixed
// "parse error:"; structurally invalid documents raise std::runtime_error
// prefixed "schema error:"; unreadable/unwritable files raise
// std::runtime_error. Emission is byte-deterministic.

#include <string>
#include <vector>

#include "wchaos/chaos.hpp"
#include "wchaos/checks.hpp"
#include "wchaos/reduction.hpp"
#include "wchaos/spectra.hpp"

namespace wchaos {

// %.17g -- enough digits to round-trip any double exactly.
std::string format_double(double value);

// {"grid":{"horizon":T,"cells":m},"degrees":{"n":<nested arrays>}} with
// row-major nesting of depth n and innermost [re, im] pairs; degree "0" is a
// single pair. All-zero degrees are omitted (canonical form). One line plus
// trailing newline.
std::string emit_chaos_json(const ChaosElement& Y);
ChaosElement parse_chaos_json(const std::string& text);

// {"steps":[{"p":<chaos document>,"h":[[re,im] x cells]}, ...]}; every step
// must live on `grid`.
std::vector<ReductionStep> parse_reduction_steps(const std::string& text,
                                                 const GridSpec& grid);

std::string emit_verify_json(const CheckParams& params,
                             const std::vector<CheckResult>& results);
std::string emit_reduction_report_json(const ReductionReport& report);
std::string emit_probe_report_json(const ZeroDivisorReport& report);

// "k,real,imag" rows for tau(Y^k), k = 0..values.size()-1.
std::string emit_moments_csv(const std::vector<Complex>& values);

// "bin_left,bin_right,weight" over `bins` equal-width bins spanning the
// eigenvalue range (widened by 1/2 on each side when the range is a point).
std::string emit_spectrum_csv(const SpectralMeasure& mu, int bins);

// "eigenvalue,weight" raw point rows.
std::string emit_points_csv(const SpectralMeasure& mu);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace wchaos
