#pragma once

#include <string>

#include "json.hpp"

#include "recurshift/index.hpp"

namespace recurshift {

using Json = nlohmann::ordered_json;

enum class Status { Pass, Fail, Inconclusive };

std::string to_string(Status s);
Status status_from_string(const std::string& s);

/// Worst of two statuses: Fail beats Inconclusive beats Pass.
Status combine(Status a, Status b);

/// Integers within +-(2^53 - 1) become JSON numbers; larger ones decimal strings.
Json index_json(Index v);
Index index_from_json(const Json& j);

}  // namespace recurshift
