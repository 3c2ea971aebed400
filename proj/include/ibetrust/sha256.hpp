/*
 * Copyright (c) 2026 The ibetrust Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef IBETRUST_SHA256_HPP_
#define IBETRUST_SHA256_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "ibetrust/bytes.hpp"

namespace ibetrust {

/**
 * Streaming SHA-256 (FIPS 180-4).
 */
class Sha256
{
public:
    static constexpr std::size_t kDigestSize = 32;
    static constexpr std::size_t kBlockSize = 64;

    using Digest = std::array<std::uint8_t, kDigestSize>;

    Sha256();

    Sha256 &Update(ByteView data);
    Sha256 &Update(std::string_view text);

    /// Finishes the hash. The object is reset afterwards and may be reused.
    Digest Finish();

private:
    void Compress(const std::uint8_t *block);
    void Reset();

    std::array<std::uint32_t, 8> mState;
    std::array<std::uint8_t, kBlockSize> mBuffer;
    std::size_t mBuffered;
    std::uint64_t mTotalBytes;
};

Sha256::Digest Sha256Of(ByteView data);
Sha256::Digest Sha256Of(std::string_view text);

/// Lowercase 64-character hex form of a digest.
std::string DigestHex(const Sha256::Digest &digest);

Sha256::Digest HmacSha256(ByteView key, ByteView message);

} // namespace ibetrust

#endif // IBETRUST_SHA256_HPP_
