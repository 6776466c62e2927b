#include "csax/self_index.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <string>
#include <tuple>

#include "csax/serialize.hpp"
#include "csax/text.hpp"

namespace csax {

SelfIndex SelfIndex::build(std::string_view bytes, u32 sample_rate,
                           BuildInstrumentation* instr, bool record_visits) {
    Text t = make_text(bytes);
    BuildResult parts = build_self_index_parts(t, sample_rate, record_visits);
    SelfIndex idx;
    idx.fm_ = std::move(parts.fm);
    idx.topo_ = std::move(parts.topo);
    idx.nd_ = std::move(parts.nd);
    idx.d_ = parts.d;
    idx.byte_to_code_ = t.byte_to_code;
    idx.code_to_byte_ = t.code_to_byte;
    idx.text_digest_ = fnv1a(bytes.data(), bytes.size());
    if (instr) *instr = std::move(parts.instr);
    return idx;
}

std::optional<SearchResult> SelfIndex::search_interval(std::string_view pattern) const {
    size_t n = fm_.size();
    SearchResult res;
    res.l = 0;
    res.r = n - 1;
    if (pattern.empty()) return res;

    std::vector<Symbol> pat;
    pat.reserve(pattern.size());
    for (unsigned char c : pattern) {
        int code = c == 0 ? -1 : byte_to_code_[c];
        if (code < 0) return std::nullopt;
        pat.push_back(static_cast<Symbol>(code));
    }

    const SequenceIndex& seq = fm_.bwt_rev();
    QueryStats& st = res.stats;
    enum class Cur { Node, Edge, Detached };
    // the root is heavy iff the tree has at least d leaves
    Cur cur = n >= d_ ? Cur::Node : Cur::Detached;
    SuffixTreeTopo::Node u = topo_.root();
    u32 target = 0;  // pending child ordinal while descending an edge
    size_t l = 0, r = n - 1;
    size_t g = static_cast<size_t>(d_) * d_;

    auto uniform = [&](size_t lo, size_t hi) {
        if (lo == hi) return true;
        if (seq.access(lo) != seq.access(hi)) return false;
        return seq.partial_rank(hi, &st) - seq.partial_rank(lo, &st) == hi - lo;
    };

    for (Symbol a : pat) {
        bool toward_child = false;
        switch (cur) {
            case Cur::Node: {
                size_t p = topo_.preorder(u);
                if (nd_.is_marked(p)) {
                    auto e = nd_.lookup(seq, p, a, &st);
                    if (e) {  // stored heavy child: precomputed ranks
                        std::tie(l, r) = fm_.backward_step_with_ranks(a, e->rank_lo, e->rank_hi);
                        target = e->child;
                        toward_child = true;
                    } else {  // light or absent child: the one general step
                        auto iv = fm_.backward_step(a, l, r, &st);
                        if (!iv) return std::nullopt;
                        std::tie(l, r) = *iv;
                        cur = Cur::Detached;
                    }
                } else {
                    auto hc = nd_.heavy_child_of(p);
                    bool resolved = false;
                    if (hc) {
                        // few non-heavy symbols here, so if a leads to the
                        // heavy child it shows up within g of both ends
                        auto w1 = fm_.interval_rank().query(seq, a, l, std::min(l + g, r), &st);
                        auto w2 = fm_.interval_rank().query(seq, a, r - std::min(g, r - l), r, &st);
                        if (w1 && w2) {
                            size_t lo = w1->first, hi = w2->second;
                            std::tie(l, r) = fm_.backward_step_with_ranks(a, lo, hi);
                            if (hi - lo >= d_) {
                                target = *hc;
                                toward_child = true;
                            } else {
                                cur = Cur::Detached;
                            }
                            resolved = true;
                        }
                    }
                    if (!resolved) {  // light target: the one general step
                        auto iv = fm_.backward_step(a, l, r, &st);
                        if (!iv) return std::nullopt;
                        std::tie(l, r) = *iv;
                        cur = Cur::Detached;
                    }
                }
                break;
            }
            case Cur::Detached: {
                if (r - l > d_) throw std::logic_error("detached interval wider than threshold");
                auto pr = fm_.interval_rank().query(seq, a, l, r, &st);
                if (!pr) return std::nullopt;
                std::tie(l, r) = fm_.backward_step_with_ranks(a, pr->first, pr->second);
                break;
            }
            case Cur::Edge: {
                Symbol c = seq.access(l);
                if (a != c) return std::nullopt;
                size_t hi = seq.partial_rank(r, &st);
                size_t lo = hi - (r - l + 1);
                std::tie(l, r) = fm_.backward_step_with_ranks(c, lo, hi);
                toward_child = true;
                break;
            }
        }
        if (toward_child) {
            // a non-uniform interval means the edge label is exhausted and
            // the pending child node has been reached
            if (uniform(l, r)) {
                cur = Cur::Edge;
            } else {
                u = topo_.child(u, target);
                cur = Cur::Node;
            }
        }
    }
    res.l = l;
    res.r = r;
    return res;
}

size_t SelfIndex::count(std::string_view pattern) const {
    auto s = search_interval(pattern);
    return s ? s->r - s->l + 1 : 0;
}

std::vector<u64> SelfIndex::locate(std::string_view pattern) const {
    auto s = search_interval(pattern);
    if (!s) return {};
    std::vector<u64> pos = fm_.locate(s->l, s->r, pattern.size());
    std::sort(pos.begin(), pos.end());
    return pos;
}

std::vector<u8> SelfIndex::extract(size_t from, size_t len) const {
    std::vector<Symbol> codes = fm_.extract(from, len);
    std::vector<u8> out;
    out.reserve(codes.size());
    for (Symbol c : codes) out.push_back(c == 0 ? u8{0} : code_to_byte_.at(c - 1));
    return out;
}

namespace {

constexpr char kMagic[4] = {'C', 'S', 'A', 'X'};
constexpr u32 kVersion = 1;
enum SectionId : u32 { kSecAlphabet = 1, kSecFm = 2, kSecTopo = 3, kSecDicts = 4 };
constexpr size_t kNumSections = 4;

}  // namespace

std::vector<std::vector<u8>> SelfIndex::sections() const {
    std::vector<std::vector<u8>> secs;
    {
        Writer w;
        w.put_u32(fm_.sigma());
        w.put_vec(code_to_byte_);
        secs.push_back(w.take());
    }
    {
        Writer w;
        fm_.save(w);
        secs.push_back(w.take());
    }
    {
        Writer w;
        topo_.save(w);
        secs.push_back(w.take());
    }
    {
        Writer w;
        nd_.save(w);
        secs.push_back(w.take());
    }
    return secs;
}

std::vector<u8> SelfIndex::serialize() const {
    auto secs = sections();
    // fixed header fields + section table + checksum, padded to 8
    size_t header_len = 4 + 4 + 8 + 4 + 4 + 4 + 4 + 8 + 4 + kNumSections * 24 + 8;
    size_t data_start = (header_len + 7) / 8 * 8;
    Writer w;
    w.put_bytes(kMagic, 4);
    w.put_u32(kVersion);
    w.put_u64(fm_.size());
    w.put_u32(fm_.sigma());
    w.put_u32(fm_.sample_rate());
    w.put_u32(d_);
    w.put_u32(0);  // reserved
    w.put_u64(text_digest_);
    w.put_u32(static_cast<u32>(kNumSections));
    size_t off = data_start;
    for (size_t s = 0; s < kNumSections; ++s) {
        w.put_u32(static_cast<u32>(s + 1));
        w.put_u32(0);
        w.put_u64(off);
        w.put_u64(secs[s].size());
        off += (secs[s].size() + 7) / 8 * 8;
    }
    w.put_u64(fnv1a(w.bytes().data(), w.size()));
    w.align8();
    for (auto& sec : secs) {
        w.put_bytes(sec.data(), sec.size());
        w.align8();
    }
    return w.take();
}

SelfIndex SelfIndex::deserialize(const std::vector<u8>& buf) {
    Reader r(buf);
    char magic[4];
    try {
        r.get_bytes(magic, 4);
        if (std::memcmp(magic, kMagic, 4) != 0) throw CorruptIndex("bad magic");
        if (r.get_u32() != kVersion) throw CorruptIndex("unsupported version");
        u64 n = r.get_u64();
        u32 sigma = r.get_u32();
        u32 b = r.get_u32();
        u32 d = r.get_u32();
        r.get_u32();  // reserved
        u64 digest = r.get_u64();
        u32 nsec = r.get_u32();
        if (nsec != kNumSections) throw CorruptIndex("bad section count");
        struct Sec {
            u32 id;
            u64 off, len;
        };
        std::vector<Sec> secs;
        for (u32 s = 0; s < nsec; ++s) {
            Sec sec;
            sec.id = r.get_u32();
            r.get_u32();
            sec.off = r.get_u64();
            sec.len = r.get_u64();
            secs.push_back(sec);
        }
        size_t checksum_at = r.consumed();
        if (r.get_u64() != fnv1a(buf.data(), checksum_at)) throw CorruptIndex("header checksum");

        // sections must tile the rest of the file exactly, 8-aligned
        u64 expect_off = (checksum_at + 8 + 7) / 8 * 8;
        for (auto& s : secs) {
            if (s.off != expect_off) throw CorruptIndex("section layout");
            expect_off += (s.len + 7) / 8 * 8;
        }
        if (expect_off != buf.size()) throw CorruptIndex("file size mismatch");

        SelfIndex idx;
        idx.d_ = d;
        idx.text_digest_ = digest;
        auto section = [&](u32 id) {
            for (auto& s : secs) {
                if (s.id != id) continue;
                if (s.off > buf.size() || s.len > buf.size() - s.off)
                    throw CorruptIndex("section out of bounds");
                return Reader(buf.data() + s.off, s.len);
            }
            throw CorruptIndex("missing section");
        };
        {
            Reader sr = section(kSecAlphabet);
            u32 s2 = sr.get_u32();
            idx.code_to_byte_ = sr.get_vec<u8>();
            if (s2 != sigma || idx.code_to_byte_.size() + 1 != sigma)
                throw CorruptIndex("alphabet inconsistent");
        }
        idx.byte_to_code_.fill(-1);
        for (size_t c = 0; c < idx.code_to_byte_.size(); ++c) {
            u8 byte = idx.code_to_byte_[c];
            if (byte == 0 || idx.byte_to_code_[byte] != -1)
                throw CorruptIndex("alphabet map not injective");
            idx.byte_to_code_[byte] = static_cast<int>(c + 1);
        }
        {
            Reader sr = section(kSecFm);
            idx.fm_ = FMIndex::load(sr);
        }
        {
            Reader sr = section(kSecTopo);
            idx.topo_ = SuffixTreeTopo::load(sr);
        }
        {
            Reader sr = section(kSecDicts);
            idx.nd_ = NodeDicts::load(sr);
        }
        if (idx.fm_.size() != n || idx.fm_.sigma() != sigma || idx.fm_.sample_rate() != b ||
            idx.topo_.num_leaves_total() != n || idx.nd_.num_nodes() != idx.topo_.num_nodes() ||
            idx.nd_.d() != d || heavy_threshold(sigma) != d)
            throw CorruptIndex("component cross-check failed");
        return idx;
    } catch (const CorruptIndex&) {
        throw;
    } catch (const std::exception& e) {
        throw CorruptIndex(std::string("malformed container: ") + e.what());
    }
}

double empirical_entropy(const std::vector<u8>& s, u32 k) {
    if (s.size() <= k) return 0.0;
    std::map<std::string, std::map<u8, u64>> ctx;
    for (size_t i = k; i < s.size(); ++i) {
        std::string c(reinterpret_cast<const char*>(s.data() + i - k), k);
        ++ctx[c][s[i]];
    }
    double total = static_cast<double>(s.size() - k);
    double h = 0.0;
    for (auto& [c, dist] : ctx) {
        u64 csum = 0;
        for (auto& [sym, cnt] : dist) csum += cnt;
        for (auto& [sym, cnt] : dist) {
            double p = static_cast<double>(cnt) / static_cast<double>(csum);
            h -= (static_cast<double>(cnt) / total) * std::log2(p);
        }
    }
    return h;
}

IndexStats SelfIndex::stats() const {
    IndexStats st;
    st.n = fm_.size();
    st.sigma = fm_.sigma();
    st.d = d_;
    st.b = fm_.sample_rate();
    auto secs = sections();
    st.alphabet_bytes = secs[0].size();
    st.fm_bytes = secs[1].size();
    st.topo_bytes = secs[2].size();
    st.dict_bytes = secs[3].size();
    const SequenceIndex& seq = fm_.bwt_rev();
    st.payload_bits = seq.payload_bits();
    st.chunk_dir_bits = seq.chunk_dir_bits();
    st.prank_bits = seq.prank_dir_bits();
    {
        Writer w;
        fm_.interval_rank().save(w);
        st.interval_rank_bits = w.size() * 8;
    }
    st.dict_storage_bits = nd_.storage_bits();
    std::vector<u8> text = extract(0, st.n > 0 ? st.n - 1 : 0);
    st.h0 = empirical_entropy(text, 0);
    st.h1 = empirical_entropy(text, 1);
    st.h2 = empirical_entropy(text, 2);
    st.h3 = empirical_entropy(text, 3);
    return st;
}

}  // namespace csax
