#include "gcis/index_io.hpp"

#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <zlib.h>

namespace gcis {

namespace {

class byte_sink {
public:
    void raw(const void* p, size_t n) { buf_.append(static_cast<const char*>(p), n); }
    template <class T>
    void le(T v) {
        unsigned char b[sizeof(T)];
        for (size_t i = 0; i < sizeof(T); ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
        raw(b, sizeof(T));
    }
    void u64s(std::span<const uint64_t> vs) {
        for (uint64_t v : vs) le(v);
    }
    void u32s(std::span<const uint32_t> vs) {
        for (uint32_t v : vs) le(v);
    }
    std::string& str() { return buf_; }

private:
    std::string buf_;
};

class byte_source {
public:
    explicit byte_source(std::string data) : data_(std::move(data)) {}
    size_t remaining() const { return data_.size() - pos_; }
    void need(size_t n) const {
        if (remaining() < n) raise(errc::truncated_stream, "index stream truncated");
    }
    template <class T>
    T le() {
        need(sizeof(T));
        T v = 0;
        for (size_t i = 0; i < sizeof(T); ++i)
            v |= static_cast<T>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
        pos_ += sizeof(T);
        return v;
    }
    std::vector<uint64_t> u64s(size_t n) {
        if (n > remaining() / 8) // reject a corrupt count before allocating
            raise(errc::truncated_stream, "index stream truncated");
        std::vector<uint64_t> v(n);
        for (auto& x : v) x = le<uint64_t>();
        return v;
    }
    std::vector<uint32_t> u32s(size_t n) {
        if (n > remaining() / 4)
            raise(errc::truncated_stream, "index stream truncated");
        std::vector<uint32_t> v(n);
        for (auto& x : v) x = le<uint32_t>();
        return v;
    }
    void raw(void* p, size_t n) {
        need(n);
        std::memcpy(p, data_.data() + pos_, n);
        pos_ += n;
    }
    const std::string& data() const { return data_; }
    size_t pos() const { return pos_; }

private:
    std::string data_;
    size_t pos_ = 0;
};

uint32_t crc_of(const char* p, size_t n) {
    return static_cast<uint32_t>(
        ::crc32(0, reinterpret_cast<const unsigned char*>(p), static_cast<uInt>(n)));
}

void write_header(byte_sink& out, index_encoding enc, uint64_t n,
                  std::span<const uint32_t> rules_per_height) {
    out.raw(index_magic, sizeof(index_magic));
    out.le<uint16_t>(index_version);
    out.le<uint8_t>(static_cast<uint8_t>(enc));
    out.le<uint8_t>(0); // flags, reserved
    out.le<uint64_t>(n);
    out.le<uint16_t>(static_cast<uint16_t>(rules_per_height.size()));
    out.u32s(rules_per_height);
}

void write_ef(byte_sink& out, const elias_fano& ef) {
    out.le<uint64_t>(ef.universe());
    out.le<uint64_t>(ef.size());
    out.le<uint8_t>(ef.low_width());
    out.u64s(ef.low_words());
    out.u64s(ef.high_words());
}

elias_fano read_ef(byte_source& in) {
    uint64_t universe = in.le<uint64_t>();
    uint64_t count = in.le<uint64_t>();
    uint8_t low_width = in.le<uint8_t>();
    auto low = in.u64s(elias_fano::low_word_count(count, low_width));
    auto high = in.u64s(elias_fano::high_word_count(universe, count, low_width));
    return elias_fano::from_parts(universe, count, low_width, std::move(low), std::move(high));
}

void emit(std::ostream& os, byte_sink& out) {
    uint32_t crc = crc_of(out.str().data(), out.str().size());
    out.le<uint32_t>(crc);
    os.write(out.str().data(), static_cast<std::streamsize>(out.str().size()));
    if (!os) raise(errc::io, "index write failed");
}

} // namespace

void write_index(std::ostream& os, const nep_store& store) {
    byte_sink out;
    write_header(out, index_encoding::nep, store.text_len, store.rules_per_height);
    out.u64s(store.rule_starts);
    out.u32s(store.rhs_concat);
    out.u64s(store.exp_lengths);
    emit(os, out);
}

void write_index(std::ostream& os, const uni_store& store) {
    byte_sink out;
    write_header(out, index_encoding::uni, store.text_len, store.rules_per_height);
    write_ef(out, store.first_symbols);
    write_ef(out, store.delta_offsets);
    out.le<uint64_t>(store.delta_bits);
    out.u64s(store.delta_words);
    out.le<uint64_t>(store.lengths.end8);
    out.le<uint64_t>(store.lengths.end16);
    out.raw(store.lengths.v8.data(), store.lengths.v8.size());
    for (uint16_t v : store.lengths.v16) out.le<uint16_t>(v);
    out.u32s(store.lengths.v32);
    out.le<uint64_t>(store.start_rhs.size());
    out.u32s(store.start_rhs);
    emit(os, out);
}

std::variant<nep_store, uni_store> read_index(std::istream& is) {
    std::string data((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    byte_source in(std::move(data));

    char magic[8];
    in.raw(magic, sizeof(magic));
    if (std::memcmp(magic, index_magic, sizeof(magic)) != 0)
        raise(errc::bad_magic, "not a GCIS index file");
    uint16_t version = in.le<uint16_t>();
    if (version != index_version)
        raise(errc::version_mismatch, "unsupported index version");
    uint8_t enc = in.le<uint8_t>();
    in.le<uint8_t>(); // flags
    uint64_t n = in.le<uint64_t>();
    uint16_t tau = in.le<uint16_t>();
    if (tau == 0) raise(errc::truncated_stream, "index header: no heights");
    auto rules_per_height = in.u32s(tau);
    uint64_t rules = 0;
    for (uint32_t c : rules_per_height) rules += c;

    auto check_crc = [&]() {
        if (in.remaining() != 4) raise(errc::truncated_stream, "index stream truncated");
        size_t body = in.pos();
        uint32_t stored = in.le<uint32_t>();
        if (crc_of(in.data().data(), body) != stored)
            raise(errc::checksum_mismatch, "index checksum mismatch");
    };

    if (enc == static_cast<uint8_t>(index_encoding::nep)) {
        nep_store st;
        st.text_len = n;
        st.rules_per_height = std::move(rules_per_height);
        st.rule_starts = in.u64s(rules + 1);
        st.rhs_concat = in.u32s(st.rule_starts.back());
        st.exp_lengths = in.u64s(rules);
        check_crc();
        st.finish();
        return st;
    }
    if (enc == static_cast<uint8_t>(index_encoding::uni)) {
        uni_store st;
        st.text_len = n;
        st.rules_per_height = std::move(rules_per_height);
        st.first_symbols = read_ef(in);
        st.delta_offsets = read_ef(in);
        st.delta_bits = in.le<uint64_t>();
        st.delta_words = in.u64s((st.delta_bits + 63) / 64);
        st.lengths.end8 = in.le<uint64_t>();
        st.lengths.end16 = in.le<uint64_t>();
        if (st.lengths.end16 < st.lengths.end8 || st.lengths.end16 > rules)
            raise(errc::truncated_stream, "index stream truncated");
        st.lengths.v8.resize(st.lengths.end8);
        in.raw(st.lengths.v8.data(), st.lengths.v8.size());
        st.lengths.v16.resize(st.lengths.end16 - st.lengths.end8);
        for (auto& v : st.lengths.v16) v = in.le<uint16_t>();
        st.lengths.v32 = in.u32s(rules - st.lengths.end16);
        uint64_t start_len = in.le<uint64_t>();
        st.start_rhs = in.u32s(start_len);
        check_crc();
        st.finish();
        return st;
    }
    raise(errc::io, "unknown index encoding");
}

void save_index(const std::string& path, const nep_store& store) {
    std::ofstream os(path, std::ios::binary);
    if (!os) raise(errc::io, "cannot open " + path + " for writing");
    write_index(os, store);
}

void save_index(const std::string& path, const uni_store& store) {
    std::ofstream os(path, std::ios::binary);
    if (!os) raise(errc::io, "cannot open " + path + " for writing");
    write_index(os, store);
}

any_grammar load_index(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) raise(errc::io, "cannot open " + path);
    auto store = read_index(is);
    if (std::holds_alternative<nep_store>(store))
        return any_grammar(std::in_place_index<0>, std::move(std::get<nep_store>(store)));
    return any_grammar(std::in_place_index<1>, std::move(std::get<uni_store>(store)));
}

} // namespace gcis
