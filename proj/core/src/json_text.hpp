// Copyright 2026 The spencerkit Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SPENCERKIT_SRC_JSON_TEXT_HPP_
#define SPENCERKIT_SRC_JSON_TEXT_HPP_

#include <string>

#include "json.hpp"

namespace spencerkit::detail {

/// Pretty-printed JSON with every floating-point number at 17 significant
/// digits; non-finite values become the strings "inf", "-inf", "nan".
std::string dump_json(const nlohmann::ordered_json& value);

}  // namespace spencerkit::detail

#endif  // SPENCERKIT_SRC_JSON_TEXT_HPP_
