//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef GADMOL_REPORT_HPP_
#define GADMOL_REPORT_HPP_

#include <string>
#include <string_view>

namespace gadmol {

// Lower-case hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

// Top-level report keys that vary between equivalent executions and are
// left out of the determinism hash.
inline constexpr std::string_view kVolatileReportKeys[] = {"timing", "execution",
                                                           "determinism_hash"};

// SHA-256 of the report JSON with the volatile keys removed, serialized
// compactly with sorted keys.
std::string determinism_hash(std::string_view report_json);

}  // namespace gadmol

#endif  // GADMOL_REPORT_HPP_
