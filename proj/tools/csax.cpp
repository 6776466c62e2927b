#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "csax/self_index.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitCorrupt = 3;

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) return std::nullopt;
    return ss.str();
}

bool write_file(const std::string& path, const std::vector<csax::u8>& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    return static_cast<bool>(out);
}

int load_index(const std::string& path, csax::SelfIndex& idx) {
    auto bytes = read_file(path);
    if (!bytes) {
        std::cerr << "error: cannot read index file: " << path << "\n";
        return kExitIo;
    }
    try {
        std::vector<csax::u8> buf(bytes->begin(), bytes->end());
        idx = csax::SelfIndex::deserialize(buf);
    } catch (const csax::CorruptIndex& e) {
        std::cerr << "error: corrupt index: " << e.what() << "\n";
        return kExitCorrupt;
    }
    return kExitOk;
}

int get_pattern(const std::string& pat, const std::string& pat_file, std::string& out) {
    if (!pat_file.empty()) {
        auto bytes = read_file(pat_file);
        if (!bytes) {
            std::cerr << "error: cannot read pattern file: " << pat_file << "\n";
            return kExitIo;
        }
        out = *bytes;
    } else {
        out = pat;
    }
    return kExitOk;
}

void print_query_stats(const csax::QueryStats& st) {
    std::cerr << "query stats: general_rank=" << st.general_rank
              << " interval_rank=" << st.interval_rank << " partial_rank=" << st.partial_rank
              << " dict_lookups=" << st.dict_lookups << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"csax: compressed full-text self-index"};
    app.require_subcommand(1);

    std::string input, output, index_path, pattern, pattern_file;
    csax::u32 sample_rate = 0;
    std::size_t limit = 0, from = 0, len = 0;
    bool verbose = false;

    auto* cmd_build = app.add_subcommand("build", "build an index from a file");
    cmd_build->add_option("-i,--input", input, "input text file")->required();
    cmd_build->add_option("-o,--output", output, "output index file")->required();
    cmd_build->add_option("--sample-rate", sample_rate, "suffix array sampling step (0 = auto)");

    auto* cmd_count = app.add_subcommand("count", "count pattern occurrences");
    cmd_count->add_option("-x,--index", index_path, "index file")->required();
    auto* count_pat = cmd_count->add_option_group("pattern");
    count_pat->add_option("-p,--pattern", pattern, "pattern string");
    count_pat->add_option("--pattern-file", pattern_file, "read pattern bytes from a file");
    count_pat->require_option(1);
    cmd_count->add_flag("--verbose", verbose, "print query counters to stderr");

    auto* cmd_locate = app.add_subcommand("locate", "list occurrence positions");
    cmd_locate->add_option("-x,--index", index_path, "index file")->required();
    auto* locate_pat = cmd_locate->add_option_group("pattern");
    locate_pat->add_option("-p,--pattern", pattern, "pattern string");
    locate_pat->add_option("--pattern-file", pattern_file, "read pattern bytes from a file");
    locate_pat->require_option(1);
    cmd_locate->add_option("--limit", limit, "print at most this many positions");
    cmd_locate->add_flag("--verbose", verbose, "print query counters to stderr");

    auto* cmd_extract = app.add_subcommand("extract", "print a text substring");
    cmd_extract->add_option("-x,--index", index_path, "index file")->required();
    cmd_extract->add_option("--from", from, "start position")->required();
    cmd_extract->add_option("--len", len, "substring length")->required();

    auto* cmd_stats = app.add_subcommand("stats", "report index statistics");
    cmd_stats->add_option("-x,--index", index_path, "index file")->required();
    cmd_stats->add_flag("--verbose", verbose, "include per-structure space breakdown");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (cmd_build->parsed()) {
        auto bytes = read_file(input);
        if (!bytes) {
            std::cerr << "error: cannot read input file: " << input << "\n";
            return kExitIo;
        }
        try {
            auto t0 = std::chrono::steady_clock::now();
            csax::SelfIndex idx = csax::SelfIndex::build(*bytes, sample_rate);
            auto t1 = std::chrono::steady_clock::now();
            std::vector<csax::u8> buf = idx.serialize();
            if (!write_file(output, buf)) {
                std::cerr << "error: cannot write index file: " << output << "\n";
                return kExitIo;
            }
            double secs = std::chrono::duration<double>(t1 - t0).count();
            double n = static_cast<double>(idx.size());
            std::cout << "n=" << idx.size() << " sigma=" << idx.sigma() << " d=" << idx.d()
                      << " b=" << idx.sample_rate() << " index_bytes=" << buf.size()
                      << " bits_per_symbol=" << 8.0 * static_cast<double>(buf.size()) / n
                      << " build_seconds=" << secs << "\n";
        } catch (const std::invalid_argument& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitIo;
        }
        return kExitOk;
    }

    csax::SelfIndex idx;
    if (int rc = load_index(index_path, idx); rc != kExitOk) return rc;

    if (cmd_count->parsed() || cmd_locate->parsed()) {
        std::string pat;
        if (int rc = get_pattern(pattern, pattern_file, pat); rc != kExitOk) return rc;
        auto res = idx.search_interval(pat);
        if (verbose) print_query_stats(res ? res->stats : csax::QueryStats{});
        if (cmd_count->parsed()) {
            std::cout << (res ? res->r - res->l + 1 : 0) << "\n";
        } else {
            std::vector<csax::u64> pos = idx.locate(pat);
            std::size_t shown = 0;
            for (csax::u64 p : pos) {
                if (limit && shown == limit) break;
                std::cout << p << "\n";
                ++shown;
            }
        }
        return kExitOk;
    }

    if (cmd_extract->parsed()) {
        if (from >= idx.size() || len > idx.size() - from) {
            std::cerr << "error: extract range exceeds text length " << idx.size() << "\n";
            return kExitUsage;
        }
        std::vector<csax::u8> bytes = idx.extract(from, len);
        std::fwrite(bytes.data(), 1, bytes.size(), stdout);
        return kExitOk;
    }

    if (cmd_stats->parsed()) {
        csax::IndexStats st = idx.stats();
        std::cout << "n=" << st.n << " sigma=" << st.sigma << " d=" << st.d << " b=" << st.b
                  << "\n";
        std::cout << "section_bytes alphabet=" << st.alphabet_bytes << " fm=" << st.fm_bytes
                  << " topology=" << st.topo_bytes << " dicts=" << st.dict_bytes << "\n";
        std::cout << "entropy h0=" << st.h0 << " h1=" << st.h1 << " h2=" << st.h2
                  << " h3=" << st.h3 << "\n";
        if (verbose) {
            std::cout << "payload_bits=" << st.payload_bits
                      << " chunk_dir_bits=" << st.chunk_dir_bits
                      << " prank_bits=" << st.prank_bits
                      << " interval_rank_bits=" << st.interval_rank_bits
                      << " dict_storage_bits=" << st.dict_storage_bits << "\n";
        }
        return kExitOk;
    }

    return kExitUsage;
}
