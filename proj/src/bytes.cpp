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

#include "ibetrust/bytes.hpp"

namespace ibetrust {

namespace {

int NibbleValue(char c)
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}

} // namespace

std::string ToHex(ByteView bytes)
{
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes)
    {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0x0f]);
    }
    return out;
}

Bytes FromHex(std::string_view hex)
{
    if (hex.size() % 2 != 0)
    {
        throw DecodeError("hex string has odd length");
    }
    Bytes out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2)
    {
        int hi = NibbleValue(hex[i]);
        int lo = NibbleValue(hex[i + 1]);
        if (hi < 0 || lo < 0)
        {
            throw DecodeError("invalid hex digit");
        }
        out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    }
    return out;
}

std::uint8_t ByteReader::U8()
{
    return Take(1)[0];
}

std::uint16_t ByteReader::U16()
{
    ByteView v = Take(2);
    return GetU16(v, 0);
}

std::uint32_t ByteReader::U32()
{
    ByteView v = Take(4);
    return GetU32(v, 0);
}

ByteView ByteReader::Take(std::size_t count)
{
    if (count > Remaining())
    {
        throw DecodeError("truncated input: wanted " + std::to_string(count) + " bytes, have " +
                          std::to_string(Remaining()));
    }
    ByteView out = mData.subspan(mOffset, count);
    mOffset += count;
    return out;
}

ByteView ByteReader::Rest()
{
    return Take(Remaining());
}

} // namespace ibetrust
