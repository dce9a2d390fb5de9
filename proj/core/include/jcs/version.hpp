// SPDX-License-Identifier: Apache-2.0
//
// jcs - hybrid analog/digital joint communication and sensing simulator

#pragma once

namespace jcs {

/// Library version string, e.g. "0.1.0".
const char* version() noexcept;

} // namespace jcs
