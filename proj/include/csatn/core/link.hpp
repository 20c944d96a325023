// Copyright 2026 The csatn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

#include "csatn/core/error.hpp"

namespace csatn {

/// Hop of the relay chain. `joint` is both hops at once.
enum class Link { ta, as, joint };

inline const char* to_string(Link l)
{
    switch (l) {
    case Link::ta: return "TA";
    case Link::as: return "AS";
    case Link::joint: return "JOINT";
    }
    return "?";
}

inline Link parse_link(std::string_view s)
{
    if (s == "TA" || s == "ta") return Link::ta;
    if (s == "AS" || s == "as") return Link::as;
    if (s == "JOINT" || s == "joint") return Link::joint;
    throw ConfigError("unknown link '" + std::string(s) + "' (expected TA, AS or JOINT)");
}

} // namespace csatn
