#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <type_traits>

#include "wickgraph/digest.hpp"
#include "wickgraph/matching.hpp"

namespace wickgraph::detail {

// Length-checked little-endian-as-stored POD buffers with a trailing
// FNV-1a checksum, written atomically (temp file + rename).
struct ByteWriter {
    std::string buf;

    void bytes(const void* p, std::size_t len) { buf.append((const char*)p, len); }

    template <typename T>
    void pod(const T& v) {
        static_assert(std::is_trivially_copyable_v<T>);
        bytes(&v, sizeof(T));
    }

    void str(const std::string& s) {
        pod((std::uint32_t)s.size());
        bytes(s.data(), s.size());
    }

    void save(const std::string& path) const {
        const std::uint64_t checksum = fnv1a64(buf.data(), buf.size(), kFnvOffset);
        const std::string tmp = path + ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw CacheError("cannot open " + tmp + " for writing");
            out.write(buf.data(), (std::streamsize)buf.size());
            out.write(reinterpret_cast<const char*>(&checksum), sizeof(checksum));
            if (!out) throw CacheError("write failed for " + tmp);
        }
        if (std::rename(tmp.c_str(), path.c_str()) != 0)
            throw CacheError("cannot move " + tmp + " into place");
    }
};

struct ByteReader {
    std::string buf;
    std::size_t pos = 0;
    std::string path;

    static ByteReader open(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw CacheError("cannot open " + path);
        std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        if (all.size() < sizeof(std::uint64_t)) throw CacheError(path + ": truncated");
        std::uint64_t stored = 0;
        std::memcpy(&stored, all.data() + all.size() - sizeof(stored), sizeof(stored));
        all.resize(all.size() - sizeof(stored));
        if (fnv1a64(all.data(), all.size(), kFnvOffset) != stored)
            throw CacheError(path + ": checksum mismatch");
        ByteReader r;
        r.buf = std::move(all);
        r.path = path;
        return r;
    }

    void bytes(void* p, std::size_t len) {
        if (pos + len > buf.size()) throw CacheError(path + ": truncated");
        std::memcpy(p, buf.data() + pos, len);
        pos += len;
    }

    template <typename T>
    T pod() {
        static_assert(std::is_trivially_copyable_v<T>);
        T v;
        bytes(&v, sizeof(T));
        return v;
    }

    std::string str() {
        const auto len = pod<std::uint32_t>();
        if (pos + len > buf.size()) throw CacheError(path + ": truncated");
        std::string s(buf, pos, len);
        pos += len;
        return s;
    }

    bool done() const { return pos == buf.size(); }
};

}  // namespace wickgraph::detail
