// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#include "jcs/version.hpp"

namespace jcs {

const char* version() noexcept
{
    return JCS_VERSION;
}

} // namespace jcs
