#ifndef VANET_CONFIG_HPP
#define VANET_CONFIG_HPP

#include <string_view>

#include "vanet/sim.hpp"

namespace vanet::cli {

// Parses the line-oriented `key = value` scenario document (sections:
// [region], [attacker], [flagged], [delay_model], [move], [sweep]) and
// returns a fully validated ScenarioConfig with defaults applied
// (5 accident messages, key cache off). Unknown keys, malformed lines and
// constraint violations throw Errc::config_error naming the offender and
// its line.
sim::ScenarioConfig parse_config(std::string_view text);

}  // namespace vanet::cli

#endif  // VANET_CONFIG_HPP
