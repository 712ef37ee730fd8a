#include "botdet/status.hpp"

#include <array>
#include <stdexcept>

namespace botdet {

namespace {

constexpr std::array<StatusMessage, 12> kMessages{{
    {StatusId::CoherentNonStandard,
     "Coherent mode: IRC bot has illegitimate IRC connection on non-standard IRC port",
     Mode::Coherent, false, false, PortClass::NonStandard},
    {StatusId::CoherentStandard,
     "Coherent mode: IRC bot has illegitimate IRC connection on standard IRC port",
     Mode::Coherent, false, false, PortClass::Standard},
    {StatusId::CoherentNonStandardResponse,
     "Coherent mode: IRC bot has illegitimate IRC connection on non-standard IRC port and C&C "
     "response(s)",
     Mode::Coherent, true, false, PortClass::NonStandard},
    {StatusId::CoherentNonStandardAttack,
     "Coherent mode: IRC bot has illegitimate IRC connection on non-standard IRC port, C&C "
     "response(s) and botnet attack",
     Mode::Coherent, true, true, PortClass::NonStandard},
    {StatusId::CoherentStandardResponse,
     "Coherent mode: IRC bot has illegitimate IRC connection on standard IRC port and C&C "
     "response(s)",
     Mode::Coherent, true, false, PortClass::Standard},
    {StatusId::CoherentStandardAttack,
     "Coherent mode: IRC bot has illegitimate IRC connection on standard IRC port, C&C "
     "response(s) and botnet attack",
     Mode::Coherent, true, true, PortClass::Standard},
    {StatusId::SingleNonStandard,
     "IRC bot has illegitimate IRC connection on non-standard IRC port",
     Mode::Single, false, false, PortClass::NonStandard},
    {StatusId::SingleNonStandardAttack,
     "IRC bot has illegitimate IRC connection on non-standard IRC port and botnet attack",
     Mode::Single, false, true, PortClass::NonStandard},
    {StatusId::NonCoherent,
     "Non-coherent mode: IRC bot has illegitimate IRC connection",
     Mode::NonCoherent, false, false, PortClass::Any},
    {StatusId::NonCoherentResponse,
     "Non-coherent mode: IRC bot has illegitimate connection and continues C&C response(s)",
     Mode::NonCoherent, true, false, PortClass::Any},
    {StatusId::NonCoherentAttack,
     "Non-coherent mode: IRC bot has illegitimate connection, continues C&C response(s) and "
     "botnet attack",
     Mode::NonCoherent, true, true, PortClass::Any},
    {StatusId::SingleStandardAttack,
     "IRC bot has illegitimate IRC connection on standard IRC port and botnet attack",
     Mode::Single, false, true, PortClass::Standard},
}};

}  // namespace

const StatusMessage& status_message(StatusId id) {
  const int index = static_cast<int>(id) - 1;
  if (index < 0 || index >= static_cast<int>(kMessages.size()))
    throw std::out_of_range("unknown status id " + std::to_string(static_cast<int>(id)));
  return kMessages[static_cast<std::size_t>(index)];
}

std::span<const StatusMessage> all_status_messages() { return kMessages; }

int status_richness(StatusId id) {
  const auto& m = status_message(id);
  return (m.has_attack ? 2 : 0) + (m.has_cc_response ? 1 : 0);
}

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Coherent: return "coherent";
    case Mode::NonCoherent: return "non_coherent";
    case Mode::Single: return "single";
  }
  return "single";
}

std::string_view to_string(PortClass p) {
  switch (p) {
    case PortClass::Standard: return "standard";
    case PortClass::NonStandard: return "non_standard";
    case PortClass::Any: return "any";
  }
  return "any";
}

}  // namespace botdet
