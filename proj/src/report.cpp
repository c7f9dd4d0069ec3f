#include "recurshift/report.hpp"

#include <cstdint>

#include "recurshift/errors.hpp"

namespace recurshift {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

Status status_from_string(const std::string& s) {
  if (s == "pass") return Status::Pass;
  if (s == "fail") return Status::Fail;
  if (s == "inconclusive") return Status::Inconclusive;
  throw InvalidArgument("unknown status '" + s + "'");
}

Status combine(Status a, Status b) {
  if (a == Status::Fail || b == Status::Fail) return Status::Fail;
  if (a == Status::Inconclusive || b == Status::Inconclusive) return Status::Inconclusive;
  return Status::Pass;
}

Json index_json(Index v) {
  if (v >= -kJsonSafeMax && v <= kJsonSafeMax) return Json(static_cast<std::int64_t>(v));
  return Json(to_string(v));
}

Index index_from_json(const Json& j) {
  if (j.is_number_integer()) return static_cast<Index>(j.get<std::int64_t>());
  if (j.is_string()) return parse_index(j.get<std::string>());
  throw InvalidArgument("expected an integer or decimal string, got " + j.dump());
}

}  // namespace recurshift
