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

#ifndef IBETRUST_BYTES_HPP_
#define IBETRUST_BYTES_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ibetrust {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/**
 * Raised when a byte sequence does not match the layout a decoder expects.
 */
class DecodeError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

std::string ToHex(ByteView bytes);
Bytes FromHex(std::string_view hex);

inline Bytes ToBytes(std::string_view text)
{
    return Bytes(text.begin(), text.end());
}

inline void Append(Bytes &out, ByteView more)
{
    out.insert(out.end(), more.begin(), more.end());
}

inline void PutU16(Bytes &out, std::uint16_t value)
{
    out.push_back(static_cast<std::uint8_t>(value >> 8));
    out.push_back(static_cast<std::uint8_t>(value & 0xff));
}

inline void PutU32(Bytes &out, std::uint32_t value)
{
    PutU16(out, static_cast<std::uint16_t>(value >> 16));
    PutU16(out, static_cast<std::uint16_t>(value & 0xffff));
}

inline std::uint16_t GetU16(ByteView in, std::size_t offset)
{
    if (offset + 2 > in.size())
    {
        throw DecodeError("u16 read past end of buffer");
    }
    return static_cast<std::uint16_t>((in[offset] << 8) | in[offset + 1]);
}

inline std::uint32_t GetU32(ByteView in, std::size_t offset)
{
    return (static_cast<std::uint32_t>(GetU16(in, offset)) << 16) | GetU16(in, offset + 2);
}

/**
 * Sequential big-endian reader over a byte view. Every read is bounds checked.
 */
class ByteReader
{
public:
    explicit ByteReader(ByteView data)
        : mData(data)
    {
    }

    std::uint8_t U8();
    std::uint16_t U16();
    std::uint32_t U32();
    ByteView Take(std::size_t count);
    ByteView Rest();

    std::size_t Remaining() const { return mData.size() - mOffset; }
    bool AtEnd() const { return mOffset == mData.size(); }

private:
    ByteView mData;
    std::size_t mOffset = 0;
};

} // namespace ibetrust

#endif // IBETRUST_BYTES_HPP_
