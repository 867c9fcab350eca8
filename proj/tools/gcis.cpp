// Command-line front end: build and query GCIS self-indexes, generate
// synthetic corpora, and benchmark batch queries.
//
// Exit codes: 1 I/O failure, 2 build or generator error, 3 malformed
// pattern input, 4 extraction window out of range.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "gcis/batch.hpp"
#include "gcis/builder.hpp"
#include "gcis/index_io.hpp"
#include "gcis/locate.hpp"
#include "gcis/textgen.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) gcis::raise(gcis::errc::io, "cannot open " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    if (!is.good() && !is.eof()) gcis::raise(gcis::errc::io, "read failed: " + path);
    return std::move(ss).str();
}

void write_file(const std::string& path, std::string_view data) {
    std::ofstream os(path, std::ios::binary);
    if (!os) gcis::raise(gcis::errc::io, "cannot open " + path + " for writing");
    os.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!os) gcis::raise(gcis::errc::io, "write failed: " + path);
}

struct pattern_file_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> load_patterns(const std::string& path, bool binary) {
    std::string data = read_file(path);
    std::vector<std::string> pats;
    if (binary) {
        size_t pos = 0;
        while (pos < data.size()) {
            if (data.size() - pos < 4) throw pattern_file_error("truncated pattern record");
            uint32_t len = 0;
            for (int i = 0; i < 4; ++i)
                len |= uint32_t(static_cast<unsigned char>(data[pos + i])) << (8 * i);
            pos += 4;
            if (len == 0 || data.size() - pos < len)
                throw pattern_file_error("bad pattern record length");
            pats.emplace_back(data, pos, len);
            pos += len;
        }
    } else {
        size_t pos = 0;
        while (pos < data.size()) {
            size_t nl = data.find('\n', pos);
            if (nl == std::string::npos) nl = data.size();
            if (nl == pos) throw pattern_file_error("empty pattern line");
            pats.emplace_back(data, pos, nl - pos);
            pos = nl + 1;
        }
    }
    if (pats.empty()) throw pattern_file_error("no patterns in file");
    return pats;
}

void print_stats(const gcis::grammar_stats& st) {
    std::cout << st.num_nonterminals << '\t' << st.total_rhs_size << '\t' << st.start_rhs_len
              << '\t' << st.heights << '\t' << st.text_len << '\n';
}

int cmd_build(const std::string& input, const std::string& output, const std::string& encoding,
              bool no_heuristic, unsigned max_height) {
    std::string text = read_file(input);
    gcis::build_options opts;
    opts.abort_heuristic = !no_heuristic;
    if (max_height > 0) opts.max_height = static_cast<uint16_t>(max_height);
    gcis::build_stats bs;
    gcis::nep_store nep = gcis::build_grammar(text, opts, &bs);
    static const char* reasons[] = {"all-unique", "few-factors", "heuristic", "max-height"};
    std::cerr << "built " << nep.rule_count() << " rules over " << nep.heights()
              << " heights (stop: " << reasons[static_cast<int>(bs.reason)] << ")\n";
    if (encoding == "uni") {
        gcis::uni_store uni = gcis::uni_store::from_nep(nep);
        gcis::save_index(output, uni);
        print_stats(gcis::grammar(std::move(uni)).stats());
    } else {
        gcis::save_index(output, nep);
        print_stats(gcis::grammar(std::move(nep)).stats());
    }
    return 0;
}

int cmd_stats(const std::string& index) {
    auto g = gcis::load_index(index);
    std::visit([](const auto& gr) { print_stats(gr.stats()); }, g);
    return 0;
}

void print_locate_line(const gcis::locate_report& rep, bool count_only, bool metrics) {
    if (count_only) {
        std::cout << rep.occ;
    } else {
        for (size_t i = 0; i < rep.positions.size(); ++i) {
            if (i) std::cout << ' ';
            std::cout << rep.positions[i];
        }
    }
    if (metrics)
        std::cout << '\t' << rep.occ << '\t' << rep.core_hits << '\t' << rep.visited_nodes
                  << '\t' << rep.total_us;
    std::cout << '\n';
}

int cmd_locate(const std::string& index, const std::string& pattern,
               const std::string& patterns_file, bool binary, bool count_only, bool metrics,
               bool fast_path, int threads) {
    std::vector<std::string> pats;
    if (!pattern.empty()) pats.push_back(pattern);
    if (!patterns_file.empty()) {
        auto more = load_patterns(patterns_file, binary);
        pats.insert(pats.end(), more.begin(), more.end());
    }
    if (pats.empty()) throw pattern_file_error("no pattern given");
    gcis::locate_options opts;
    opts.prefix_fast_path = fast_path;
    auto g = gcis::load_index(index);
    std::visit(
        [&](const auto& gr) {
            auto reports = threads > 1 ? gcis::locate_batch(gr, pats, opts, threads)
                                       : gcis::locate_batch_serial(gr, pats, opts);
            for (const auto& rep : reports) print_locate_line(rep, count_only, metrics);
        },
        g);
    return 0;
}

int cmd_extract(const std::string& index, uint64_t pos, uint64_t len) {
    auto g = gcis::load_index(index);
    std::string out =
        std::visit([&](const auto& gr) { return gr.extract_text(pos, len); }, g);
    std::fwrite(out.data(), 1, out.size(), stdout);
    return 0;
}

int cmd_gen(const std::string& family, unsigned order, uint64_t length, unsigned alphabet,
            uint64_t seed, const std::string& output) {
    std::string text;
    if (family == "fib")
        text = gcis::fibonacci_word(order);
    else if (family == "thue-morse")
        text = gcis::thue_morse_word(order);
    else if (family == "run-rich")
        text = gcis::run_rich_word(order);
    else if (family == "random")
        text = gcis::random_text(length, alphabet, seed);
    else
        gcis::raise(gcis::errc::invalid_value, "unknown family " + family);
    write_file(output, text);
    std::cerr << family << ": " << text.size() << " bytes\n";
    return 0;
}

uint64_t median_us(std::vector<uint64_t> v) {
    std::sort(v.begin(), v.end());
    return v.empty() ? 0 : v[v.size() / 2];
}

int cmd_bench(const std::string& index, const std::string& lengths_csv, unsigned queries,
              uint64_t seed, int threads, bool fast_path) {
    std::vector<uint64_t> lengths;
    std::stringstream ss(lengths_csv);
    for (std::string tok; std::getline(ss, tok, ',');)
        if (!tok.empty()) lengths.push_back(std::stoull(tok));
    if (lengths.empty() || queries == 0)
        gcis::raise(gcis::errc::invalid_value, "need pattern lengths and queries");
    gcis::locate_options opts;
    opts.prefix_fast_path = fast_path;
    auto g = gcis::load_index(index);
    std::visit(
        [&](const auto& gr) {
            std::mt19937_64 rng(seed);
            std::cout << "len\tqueries\tmean_us\tmedian_us\tmean_occ\tmean_occ_C\tmean_occ_Cp"
                         "\tmean_tau_P\n";
            std::vector<std::string> all;
            for (uint64_t len : lengths) {
                if (len == 0 || len > gr.text_len()) continue;
                std::vector<std::string> pats;
                for (unsigned q = 0; q < queries; ++q) {
                    std::uniform_int_distribution<uint64_t> dist(1, gr.text_len() - len + 1);
                    pats.push_back(gr.extract_text(dist(rng), len));
                }
                std::vector<uint64_t> us;
                double occ = 0, occ_c = 0, occ_cp = 0, tau_p = 0;
                for (const auto& p : pats) {
                    auto rep = gcis::locate(gr, p, opts);
                    us.push_back(rep.total_us);
                    occ += double(rep.occ);
                    occ_c += double(rep.core_hits);
                    occ_cp += double(rep.visited_nodes);
                    tau_p += double(rep.pattern_height);
                }
                double q = double(pats.size());
                std::cout << len << '\t' << pats.size() << '\t'
                          << std::accumulate(us.begin(), us.end(), uint64_t{0}) / pats.size()
                          << '\t' << median_us(us) << '\t' << occ / q << '\t' << occ_c / q
                          << '\t' << occ_cp / q << '\t' << tau_p / q << '\n';
                all.insert(all.end(), pats.begin(), pats.end());
            }
            using clock = std::chrono::steady_clock;
            auto t0 = clock::now();
            auto serial = gcis::locate_batch_serial(gr, all, opts);
            auto t1 = clock::now();
            auto parallel = gcis::locate_batch(gr, all, opts, threads);
            auto t2 = clock::now();
            for (size_t i = 0; i < all.size(); ++i)
                if (serial[i].positions != parallel[i].positions)
                    gcis::raise(gcis::errc::io, "batch kernels disagree");
            auto ms = [](auto d) {
                return std::chrono::duration_cast<std::chrono::milliseconds>(d).count();
            };
            std::cout << "batch\t" << all.size() << "\tserial_ms\t" << ms(t1 - t0)
                      << "\tparallel_ms\t" << ms(t2 - t1) << '\n';
        },
        g);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"GCIS grammar self-index"};
    app.require_subcommand(1);

    auto* build = app.add_subcommand("build", "build an index from a file");
    std::string in_path, out_path, encoding = "nep";
    bool no_heuristic = false;
    unsigned max_height = 0;
    build->add_option("input", in_path, "input file")->required();
    build->add_option("output", out_path, "index file")->required();
    build->add_option("--encoding", encoding, "nep or uni")
        ->check(CLI::IsMember({"nep", "uni"}));
    build->add_flag("--no-abort-heuristic", no_heuristic,
                    "keep reducing even when a level grows the grammar");
    build->add_option("--max-height", max_height, "cap the number of heights");

    auto* stats = app.add_subcommand("stats", "print grammar statistics of an index");
    std::string stats_index;
    stats->add_option("index", stats_index)->required();

    auto* locate = app.add_subcommand("locate", "report pattern occurrences");
    std::string loc_index, loc_pattern, loc_patterns;
    bool loc_binary = false, loc_count = false, loc_metrics = false, loc_fast = false;
    int loc_threads = 1;
    locate->add_option("index", loc_index)->required();
    locate->add_option("--pattern", loc_pattern, "single pattern");
    locate->add_option("--patterns", loc_patterns, "newline-delimited pattern file");
    locate->add_flag("--binary", loc_binary, "pattern file holds u32-length-prefixed records");
    locate->add_flag("--count-only", loc_count, "print counts instead of positions");
    locate->add_flag("--report-metrics", loc_metrics, "append occ, occ_C, occ_C', microseconds");
    locate->add_flag("--fast-path", loc_fast, "binary-search prefix-anchored cores");
    locate->add_option("--threads", loc_threads, "worker threads for pattern batches");

    auto* count = app.add_subcommand("count", "count pattern occurrences");
    std::string cnt_index, cnt_pattern, cnt_patterns;
    bool cnt_binary = false;
    count->add_option("index", cnt_index)->required();
    count->add_option("--pattern", cnt_pattern);
    count->add_option("--patterns", cnt_patterns);
    count->add_flag("--binary", cnt_binary);

    auto* extract = app.add_subcommand("extract", "write a text slice to stdout");
    std::string ext_index;
    uint64_t ext_pos = 0, ext_len = 0;
    extract->add_option("index", ext_index)->required();
    extract->add_option("--pos", ext_pos, "1-based start position")->required();
    extract->add_option("--len", ext_len, "number of characters")->required();

    auto* gen = app.add_subcommand("gen", "generate a synthetic corpus");
    std::string gen_family, gen_out;
    unsigned gen_order = 0, gen_alpha = 2;
    uint64_t gen_len = 0, gen_seed = 1;
    gen->add_option("--family", gen_family, "fib | thue-morse | run-rich | random")->required();
    gen->add_option("--order", gen_order, "recurrence order (fib, thue-morse, run-rich)");
    gen->add_option("--length", gen_len, "length in bytes (random)");
    gen->add_option("--alphabet", gen_alpha, "alphabet size (random)");
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_option("output", gen_out, "output file")->required();

    auto* bench = app.add_subcommand("bench", "sample patterns from the text and time locate");
    std::string bench_index, bench_lengths = "10,100";
    unsigned bench_queries = 100;
    uint64_t bench_seed = 1;
    int bench_threads = 0;
    bool bench_fast = false;
    bench->add_option("index", bench_index)->required();
    bench->add_option("--pattern-lengths", bench_lengths, "comma-separated lengths");
    bench->add_option("--queries", bench_queries, "patterns per length");
    bench->add_option("--seed", bench_seed);
    bench->add_option("--threads", bench_threads, "0 = all cores");
    bench->add_flag("--fast-path", bench_fast);

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed())
            return cmd_build(in_path, out_path, encoding, no_heuristic, max_height);
        if (stats->parsed()) return cmd_stats(stats_index);
        if (locate->parsed())
            return cmd_locate(loc_index, loc_pattern, loc_patterns, loc_binary, loc_count,
                              loc_metrics, loc_fast, loc_threads);
        if (count->parsed())
            return cmd_locate(cnt_index, cnt_pattern, cnt_patterns, cnt_binary, true, false,
                              false, 1);
        if (extract->parsed()) return cmd_extract(ext_index, ext_pos, ext_len);
        if (gen->parsed())
            return cmd_gen(gen_family, gen_order, gen_len, gen_alpha, gen_seed, gen_out);
        if (bench->parsed())
            return cmd_bench(bench_index, bench_lengths, bench_queries, bench_seed,
                             bench_threads, bench_fast);
    } catch (const pattern_file_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const gcis::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.code()) {
        case gcis::errc::out_of_range: return 4;
        case gcis::errc::empty_input:
        case gcis::errc::invalid_value:
        case gcis::errc::overflow:
        case gcis::errc::not_bitonic: return 2;
        default: return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
