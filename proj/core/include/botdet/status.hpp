#pragma once

#include <span>
#include <string_view>

namespace botdet {

enum class Mode { Coherent, NonCoherent, Single };
enum class PortClass { Standard, NonStandard, Any };

/// Canonical status ids. 1, 2, 7 and 9 are fixed by the detection model; the
/// remaining ids follow the order in which the correlation branches introduce
/// them.
enum class StatusId : int {
  CoherentNonStandard = 1,
  CoherentStandard = 2,
  CoherentNonStandardResponse = 3,
  CoherentNonStandardAttack = 4,
  CoherentStandardResponse = 5,
  CoherentStandardAttack = 6,
  SingleNonStandard = 7,
  SingleNonStandardAttack = 8,
  NonCoherent = 9,
  NonCoherentResponse = 10,
  NonCoherentAttack = 11,
  SingleStandardAttack = 12,
};

struct StatusMessage {
  StatusId id;
  std::string_view text;
  Mode mode;
  bool has_cc_response;
  bool has_attack;
  PortClass port_class;
};

const StatusMessage& status_message(StatusId id);
std::span<const StatusMessage> all_status_messages();

/// attack > C&C response > base.
int status_richness(StatusId id);

std::string_view to_string(Mode m);
std::string_view to_string(PortClass p);

}  // namespace botdet
