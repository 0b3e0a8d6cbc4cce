/*
 * Copyright 2026 The blindtm Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#ifndef BLINDTM_DIGEST_H_
#define BLINDTM_DIGEST_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace blindtm {

using Digest = std::array<std::uint8_t, 32>;

Digest Sha256(std::span<const std::uint8_t> data);
Digest Sha256(std::string_view data);

std::string HexEncode(std::span<const std::uint8_t> bytes);
// Throws ParseError on odd length or non-hex characters.
std::vector<std::uint8_t> HexDecode(std::string_view hex);

}  // namespace blindtm

#endif  // BLINDTM_DIGEST_H_
