#pragma once

namespace atlas {

// Single source of truth for the tool version; reports embed it so equal
// reports imply equal code generations.
const char* version();

}  // namespace atlas
