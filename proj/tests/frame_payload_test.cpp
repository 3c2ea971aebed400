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

#include <gtest/gtest.h>

#include "ibetrust/ake.hpp"
#include "ibetrust/ibe/ibe.hpp"
#include "ibetrust/protocol/frame.hpp"
#include "ibetrust/protocol/payload.hpp"
#include "ibetrust/rng.hpp"
#include "ibetrust/sha256.hpp"

using namespace ibetrust;
using namespace ibetrust::protocol;

TEST(Frame, HeaderLayout)
{
    Frame f;
    f.header.kind = FrameKind::kAke;
    f.header.flags = FrameHeader::kFirstFragment | FrameHeader::kMoreFragments;
    f.header.destination = 0x0102;
    f.header.source = 0xa0b0;
    f.header.sequence = 0x7fff;
    f.payload = {0xde, 0xad};
    Bytes enc = EncodeFrame(f);
    ASSERT_EQ(enc.size(), 23u);
    Bytes header(enc.begin(), enc.begin() + 8);
    EXPECT_EQ(header, (Bytes{0x03, 0x03, 0x01, 0x02, 0xa0, 0xb0, 0x7f, 0xff}));
    for (std::size_t i = 8; i < 21; ++i)
        EXPECT_EQ(enc[i], 0);
    EXPECT_EQ(enc[21], 0xde);
    EXPECT_EQ(DecodeFrame(enc), f);
}

TEST(Frame, DecodeErrors)
{
    Frame f;
    f.payload = Bytes(106, 1);
    Bytes enc = EncodeFrame(f);
    EXPECT_EQ(enc.size(), 127u);
    EXPECT_THROW(DecodeFrame(Bytes(enc.begin(), enc.begin() + 20)), DecodeError);
    Bytes longer = enc;
    longer.push_back(0);
    EXPECT_THROW(DecodeFrame(longer), DecodeError);
    Bytes kind = enc;
    kind[0] = 9;
    EXPECT_THROW(DecodeFrame(kind), DecodeError);
    Bytes padding = enc;
    padding[15] = 1;
    EXPECT_THROW(DecodeFrame(padding), DecodeError);
    Bytes flags = enc;
    flags[1] = 0x10;
    EXPECT_THROW(DecodeFrame(flags), DecodeError);
    f.payload.push_back(0);
    EXPECT_THROW(EncodeFrame(f), std::length_error);
}

TEST(Frame, FragmentationAllLengths)
{
    Rng rng(3);
    for (std::size_t len = 0; len <= 1000; ++len)
    {
        Bytes data = rng.RandomBytes(len);
        std::vector<Frame> frames = Fragment(data, FrameKind::kTaAck, 0, 7, 65530);
        std::size_t expected = len == 0 ? 1 : (len + 105) / 106;
        ASSERT_EQ(frames.size(), expected) << len;
        EXPECT_EQ(WireBytes(frames), len + 21 * expected);
        for (std::size_t i = 0; i < frames.size(); ++i)
        {
            EXPECT_LE(frames[i].WireSize(), 127u);
            EXPECT_EQ(frames[i].header.First(), i == 0);
            EXPECT_EQ(frames[i].header.More(), i + 1 < frames.size());
            EXPECT_EQ(frames[i].header.sequence, static_cast<std::uint16_t>(65530 + i));
            EXPECT_EQ(DecodeFrame(EncodeFrame(frames[i])), frames[i]);
        }
        EXPECT_EQ(Reassemble(frames), data);
    }
}

TEST(Frame, ReassemblyRejectsDamage)
{
    Rng rng(4);
    std::vector<Frame> frames = Fragment(rng.RandomBytes(300), FrameKind::kData, 1, 0, 10);
    ASSERT_EQ(frames.size(), 3u);
    std::vector<Frame> missing = {frames[0], frames[2]};
    EXPECT_THROW(Reassemble(missing), ReassemblyError);
    std::vector<Frame> swapped = {frames[0], frames[2], frames[1]};
    EXPECT_THROW(Reassemble(swapped), ReassemblyError);
    std::vector<Frame> truncated = {frames[0], frames[1]};
    EXPECT_THROW(Reassemble(truncated), ReassemblyError);
    std::vector<Frame> noHead = {frames[1], frames[2]};
    EXPECT_THROW(Reassemble(noHead), ReassemblyError);
}

TEST(Frame, IncrementalReassembler)
{
    Rng rng(5);
    Bytes a = rng.RandomBytes(250);
    Bytes b = rng.RandomBytes(50);
    std::vector<Frame> fa = Fragment(a, FrameKind::kTaAck, 0, 1, 0);
    std::vector<Frame> fb = Fragment(b, FrameKind::kAke, 2, 1, 0);
    Reassembler r;
    EXPECT_FALSE(r.Offer(fa[0]));
    auto mb = r.Offer(fb[0]); // different (source, kind) runs interleave
    ASSERT_TRUE(mb);
    EXPECT_EQ(mb->data, b);
    EXPECT_FALSE(r.Offer(fa[1]));
    auto ma = r.Offer(fa[2]);
    ASSERT_TRUE(ma);
    EXPECT_EQ(ma->data, a);
    EXPECT_EQ(ma->frames.size(), 3u);

    EXPECT_FALSE(r.Offer(fa[0]));
    EXPECT_FALSE(r.Offer(fa[2])); // gap discards the pending run
    EXPECT_EQ(r.Timeouts(), 1u);
    EXPECT_FALSE(r.Offer(fa[0]));
    EXPECT_EQ(r.ExpirePending(), 1u);
    EXPECT_EQ(r.Timeouts(), 2u);
    EXPECT_EQ(r.PendingCount(), 0u);
}

TEST(Payload, LayoutAndMac)
{
    IbeTrustPayload p{0x0102, 0x0304, ToBytes("hi")};
    Bytes enc = EncodePayload(p);
    ASSERT_EQ(enc.size(), 10u);
    Bytes covered(enc.begin(), enc.begin() + 6);
    auto digest = Sha256Of(covered);
    EXPECT_EQ(Bytes(enc.begin() + 6, enc.end()), Bytes(digest.begin(), digest.begin() + 4));
    auto dec = DecodePayload(enc);
    ASSERT_TRUE(std::holds_alternative<IbeTrustPayload>(dec));
    EXPECT_EQ(std::get<IbeTrustPayload>(dec), p);
    EXPECT_THROW(EncodePayload({1, 1, Bytes(99, 0)}), std::length_error);
    EXPECT_NO_THROW(EncodePayload({1, 1, Bytes(98, 0)}));
    EXPECT_THROW(DecodePayload(Bytes(7, 0)), DecodeError);
    EXPECT_THROW(DecodePayload(Bytes(107, 0)), DecodeError);
}

// 10^5 single-bit flips across random payloads. Each one must surface as
// a MAC mismatch or a decode error, never as a valid payload.
TEST(Payload, RandomBitFlipsDetected)
{
    Rng rng(100000);
    std::size_t detected = 0;
    for (int i = 0; i < 100000; ++i)
    {
        IbeTrustPayload p{static_cast<std::uint16_t>(rng.NextU64()), static_cast<std::uint16_t>(rng.NextU64()),
                          rng.RandomBytes(rng.UniformBelow(99))};
        Frame f;
        f.payload = EncodePayload(p);
        Bytes wire = EncodeFrame(f);
        std::size_t bit = 21 * 8 + rng.UniformBelow(f.payload.size() * 8);
        wire[bit / 8] ^= static_cast<std::uint8_t>(0x80 >> (bit % 8));
        try
        {
            auto dec = DecodePayload(DecodeFrame(wire).payload);
            if (std::holds_alternative<MacMismatch>(dec))
                ++detected;
        }
        catch (const DecodeError &)
        {
            ++detected;
        }
    }
    EXPECT_EQ(detected, 100000u);
}

TEST(Payload, TrustIdList)
{
    std::vector<std::uint16_t> ids;
    for (std::uint16_t i = 1; i <= 200; ++i)
        ids.push_back(i);
    Bytes enc = EncodeTrustIdList(ids);
    EXPECT_EQ(enc.size(), 400u);
    EXPECT_EQ(enc[0], 0);
    EXPECT_EQ(enc[1], 1);
    EXPECT_EQ(DecodeTrustIdList(enc), ids);
    EXPECT_THROW(DecodeTrustIdList(Bytes(3, 0)), DecodeError);
}

TEST(Payload, TaRequestCodec)
{
    TaRequest req{7, boot::TrustValue("0123abcd"), 0xbeef};
    Bytes enc = EncodeTaRequest(req);
    ASSERT_EQ(enc.size(), kTaRequestBytes);
    EXPECT_EQ(std::string(enc.begin() + 2, enc.begin() + 10), "0123abcd");
    EXPECT_EQ(DecodeTaRequest(enc), req);
    Bytes bad = enc;
    bad[4] ^= 1;
    EXPECT_FALSE(DecodeTaRequest(bad).has_value());
    EXPECT_THROW(DecodeTaRequest(Bytes(15, 0)), DecodeError);
}

TEST(Payload, TaAckCodec)
{
    TaAck ack{0x1234, {1, 2, 3, 500}};
    Bytes enc = EncodeTaAck(ack);
    EXPECT_EQ(enc.size(), 2u + 2 + 8 + 4);
    EXPECT_EQ(DecodeTaAck(enc), ack);
    Bytes bad = enc;
    bad[5] ^= 2;
    EXPECT_FALSE(DecodeTaAck(bad).has_value());
    TaAck empty{1, {}};
    EXPECT_EQ(DecodeTaAck(EncodeTaAck(empty)), empty);
}

TEST(Payload, Identities)
{
    EXPECT_EQ(IdentityForAddress(0), "bs");
    EXPECT_EQ(IdentityForAddress(1), "node-001");
    EXPECT_EQ(IdentityForAddress(1234), "node-1234");
}

TEST(Payload, SealOpenMultiBlock)
{
    auto [params, master] = ibe::Setup(ibe::SecurityConfig::Toy(9));
    ibe::PrivateKey key = ibe::Extract(params, master, "node-001");
    Rng rng(6);
    for (std::size_t len : {0u, 1u, 16u, 17u, 40u, 100u})
    {
        Bytes plain = rng.RandomBytes(len);
        SealedMessage sealed = Seal(params, "node-001", plain, rng);
        EXPECT_EQ(sealed.blocks, (len + 15) / 16);
        OpenResult opened = Open(params, key, sealed.bytes);
        ASSERT_TRUE(opened.plaintext.has_value()) << len;
        EXPECT_EQ(*opened.plaintext, plain);
        EXPECT_EQ(opened.pairings, sealed.blocks);
    }
    SealedMessage sealed = Seal(params, "node-001", Bytes(20, 1), rng);
    Bytes truncated(sealed.bytes.begin(), sealed.bytes.end() - 1);
    EXPECT_FALSE(Open(params, key, truncated).plaintext.has_value());
}

TEST(Payload, AkeWireForm)
{
    auto [params, master] = ibe::Setup(ibe::SecurityConfig::Demo(9));
    Rng rng(1);
    ibe::PrivateKey a = ibe::Extract(params, master, "node-001");
    ake::Initiation init = ake::Initiate(params, a, 1, "node-002", rng);
    Bytes wire = EncodeAkePayload(params, init.message);
    EXPECT_EQ(wire.size(), 2u + 2 + 64 + 4);
    ake::AkeMessage back = DecodeAkePayload(params, wire, "node-002");
    EXPECT_EQ(back.r, init.message.r);
    EXPECT_EQ(back.mac, init.message.mac);
    EXPECT_EQ(back.senderId, "node-001");
    EXPECT_EQ(back.nonce, init.message.nonce);
}
