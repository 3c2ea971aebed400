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

#include "ibetrust/protocol/frame.hpp"

#include <algorithm>

namespace ibetrust::protocol {

std::string_view FrameKindName(FrameKind kind)
{
    switch (kind)
    {
    case FrameKind::kTaRequest:
        return "ta_request";
    case FrameKind::kTaAck:
        return "ta_ack";
    case FrameKind::kAke:
        return "ake";
    case FrameKind::kData:
        return "data";
    }
    return "unknown";
}

FrameKind ParseFrameKind(std::string_view name)
{
    for (FrameKind kind : {FrameKind::kTaRequest, FrameKind::kTaAck, FrameKind::kAke, FrameKind::kData})
    {
        if (FrameKindName(kind) == name)
            return kind;
    }
    throw std::invalid_argument("unknown frame kind '" + std::string(name) + "'");
}

Bytes EncodeFrame(const Frame &frame)
{
    if (frame.payload.size() > kMaxPayloadBytes)
    {
        throw std::length_error("frame payload of " + std::to_string(frame.payload.size()) + " bytes exceeds " +
                                std::to_string(kMaxPayloadBytes));
    }
    Bytes out;
    out.reserve(frame.WireSize());
    out.push_back(static_cast<std::uint8_t>(frame.header.kind));
    out.push_back(frame.header.flags);
    PutU16(out, frame.header.destination);
    PutU16(out, frame.header.source);
    PutU16(out, frame.header.sequence);
    out.resize(kHeaderBytes, 0);
    Append(out, frame.payload);
    return out;
}

Frame DecodeFrame(ByteView bytes)
{
    if (bytes.size() < kHeaderBytes)
        throw DecodeError("frame shorter than its header");
    if (bytes.size() > kMaxFrameBytes)
        throw DecodeError("frame longer than 127 bytes");

    ByteReader reader(bytes);
    Frame frame;
    std::uint8_t kind = reader.U8();
    if (kind < 1 || kind > 4)
        throw DecodeError("unknown frame kind " + std::to_string(kind));
    frame.header.kind = static_cast<FrameKind>(kind);
    frame.header.flags = reader.U8();
    if ((frame.header.flags & ~(FrameHeader::kFirstFragment | FrameHeader::kMoreFragments)) != 0)
        throw DecodeError("reserved frame flags set");
    frame.header.destination = reader.U16();
    frame.header.source = reader.U16();
    frame.header.sequence = reader.U16();
    ByteView padding = reader.Take(kHeaderBytes - 8);
    if (std::any_of(padding.begin(), padding.end(), [](std::uint8_t b) { return b != 0; }))
        throw DecodeError("non-zero header padding");
    ByteView payload = reader.Rest();
    frame.payload.assign(payload.begin(), payload.end());
    return frame;
}

std::vector<Frame> Fragment(ByteView data, FrameKind kind, std::uint16_t source, std::uint16_t destination,
                            std::uint16_t firstSequence)
{
    std::vector<Frame> frames;
    std::size_t count = data.empty() ? 1 : (data.size() + kMaxPayloadBytes - 1) / kMaxPayloadBytes;
    for (std::size_t i = 0; i < count; ++i)
    {
        Frame frame;
        frame.header.kind = kind;
        frame.header.source = source;
        frame.header.destination = destination;
        frame.header.sequence = static_cast<std::uint16_t>(firstSequence + i);
        frame.header.flags = 0;
        if (i == 0)
            frame.header.flags |= FrameHeader::kFirstFragment;
        if (i + 1 < count)
            frame.header.flags |= FrameHeader::kMoreFragments;
        std::size_t begin = i * kMaxPayloadBytes;
        std::size_t end = std::min(data.size(), begin + kMaxPayloadBytes);
        frame.payload.assign(data.begin() + static_cast<std::ptrdiff_t>(begin),
                             data.begin() + static_cast<std::ptrdiff_t>(end));
        frames.push_back(std::move(frame));
    }
    return frames;
}

Bytes Reassemble(std::span<const Frame> frames)
{
    if (frames.empty())
        throw ReassemblyError("no fragments");
    if (!frames.front().header.First())
        throw ReassemblyError("first fragment missing");
    Bytes out;
    for (std::size_t i = 0; i < frames.size(); ++i)
    {
        const FrameHeader &h = frames[i].header;
        if (i > 0)
        {
            const FrameHeader &prev = frames[i - 1].header;
            if (h.First() || h.sequence != static_cast<std::uint16_t>(prev.sequence + 1) || h.source != prev.source ||
                h.kind != prev.kind)
                throw ReassemblyError("fragment " + std::to_string(i) + " does not continue the sequence");
        }
        bool last = i + 1 == frames.size();
        if (h.More() == last)
            throw ReassemblyError(last ? "final fragment missing" : "fragment after the final one");
        Append(out, frames[i].payload);
    }
    return out;
}

std::size_t WireBytes(std::span<const Frame> frames)
{
    std::size_t total = 0;
    for (const Frame &frame : frames)
        total += frame.WireSize();
    return total;
}

std::optional<Reassembler::Message> Reassembler::Offer(const Frame &frame)
{
    auto key = std::make_pair(frame.header.source, frame.header.kind);
    auto it = mPending.find(key);
    if (frame.header.First())
    {
        if (it != mPending.end())
        {
            ++mTimeouts;
            mPending.erase(it);
        }
        it = mPending.emplace(key, std::vector<Frame>{}).first;
    }
    else if (it == mPending.end() ||
             frame.header.sequence != static_cast<std::uint16_t>(it->second.back().header.sequence + 1))
    {
        if (it != mPending.end())
            mPending.erase(it);
        ++mTimeouts;
        return std::nullopt;
    }

    it->second.push_back(frame);
    if (frame.header.More())
        return std::nullopt;

    std::vector<Frame> run = std::move(it->second);
    mPending.erase(it);
    Message message{frame.header.kind, frame.header.source, frame.header.destination, Reassemble(run), std::move(run)};
    return message;
}

std::size_t Reassembler::ExpirePending()
{
    std::size_t dropped = mPending.size();
    mTimeouts += dropped;
    mPending.clear();
    return dropped;
}

} // namespace ibetrust::protocol
