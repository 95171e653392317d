#include "atlas/version.hpp"

namespace atlas {

const char* version() { return "0.1.0"; }

}  // namespace atlas
