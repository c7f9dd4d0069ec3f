#pragma once

#include "recurshift/language.hpp"
#include "recurshift/metric.hpp"
#include "recurshift/recurrence.hpp"
#include "recurshift/report.hpp"

namespace recurshift {

Json to_json(const FactorSet& set);
Json to_json(const OccurrenceReport& report);
Json to_json(const RecurrenceReport& report);
Json to_json(const MetricValue& value);
Json to_json(const StableMembership& m);

}  // namespace recurshift
