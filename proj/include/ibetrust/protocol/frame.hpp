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

#ifndef IBETRUST_PROTOCOL_FRAME_HPP_
#define IBETRUST_PROTOCOL_FRAME_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "ibetrust/bytes.hpp"

namespace ibetrust::protocol {

inline constexpr std::size_t kHeaderBytes = 21;
inline constexpr std::size_t kMaxPayloadBytes = 106;
inline constexpr std::size_t kMaxFrameBytes = kHeaderBytes + kMaxPayloadBytes; // 127

enum class FrameKind : std::uint8_t
{
    kTaRequest = 1,
    kTaAck = 2,
    kAke = 3,
    kData = 4,
};

std::string_view FrameKindName(FrameKind kind);
FrameKind ParseFrameKind(std::string_view name);

/**
 * 21-byte header:
 *
 *   off  size  field
 *   0    1     kind
 *   1    1     flags (0x01 first fragment, 0x02 more fragments follow)
 *   2    2     destination address (big-endian)
 *   4    2     source address
 *   6    2     sequence number
 *   8    13    zero padding
 */
struct FrameHeader
{
    static constexpr std::uint8_t kFirstFragment = 0x01;
    static constexpr std::uint8_t kMoreFragments = 0x02;

    FrameKind kind = FrameKind::kData;
    std::uint8_t flags = kFirstFragment;
    std::uint16_t destination = 0;
    std::uint16_t source = 0;
    std::uint16_t sequence = 0;

    bool First() const { return (flags & kFirstFragment) != 0; }
    bool More() const { return (flags & kMoreFragments) != 0; }

    friend bool operator==(const FrameHeader &, const FrameHeader &) = default;
};

struct Frame
{
    FrameHeader header;
    Bytes payload;

    std::size_t WireSize() const { return kHeaderBytes + payload.size(); }

    friend bool operator==(const Frame &, const Frame &) = default;
};

/// Throws std::length_error when the payload exceeds 106 bytes.
Bytes EncodeFrame(const Frame &frame);
/// Throws DecodeError on short input, oversize input, unknown kind, or non-zero padding.
Frame DecodeFrame(ByteView bytes);

class ReassemblyError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Splits data into ceil(len / 106) frames (one empty frame for empty
/// data) with consecutive sequence numbers starting at firstSequence.
std::vector<Frame> Fragment(ByteView data, FrameKind kind, std::uint16_t source, std::uint16_t destination,
                            std::uint16_t firstSequence);

/// Inverse of Fragment. Throws ReassemblyError for missing, duplicated, or
/// out-of-order fragments.
Bytes Reassemble(std::span<const Frame> frames);

/// Total on-air bytes of a frame list.
std::size_t WireBytes(std::span<const Frame> frames);

/**
 * Incremental reassembly keyed by (source, kind). A fragment that does not
 * extend the pending run discards it and counts a timeout.
 */
class Reassembler
{
public:
    struct Message
    {
        FrameKind kind;
        std::uint16_t source;
        std::uint16_t destination;
        Bytes data;
        std::vector<Frame> frames;
    };

    std::optional<Message> Offer(const Frame &frame);

    /// Drops every incomplete run, counting each as a timeout.
    std::size_t ExpirePending();

    std::size_t Timeouts() const { return mTimeouts; }
    std::size_t PendingCount() const { return mPending.size(); }

private:
    std::map<std::pair<std::uint16_t, FrameKind>, std::vector<Frame>> mPending;
    std::size_t mTimeouts = 0;
};

} // namespace ibetrust::protocol

#endif // IBETRUST_PROTOCOL_FRAME_HPP_
