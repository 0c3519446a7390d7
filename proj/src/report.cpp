//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "gadmol/report.hpp"

#include <openssl/sha.h>

#include <json.hpp>

#include "gadmol/error.hpp"

namespace gadmol {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char *>(data.data()), data.size(), digest);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * SHA256_DIGEST_LENGTH);
  for (unsigned char b : digest) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 15]);
  }
  return out;
}

std::string determinism_hash(std::string_view report_json) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(report_json);
  } catch (const nlohmann::json::parse_error &e) {
    throw Error(std::string("report is not valid JSON: ") + e.what());
  }
  if (j.is_object())
    for (std::string_view key : kVolatileReportKeys) j.erase(std::string(key));
  return sha256_hex(j.dump());
}

}  // namespace gadmol
