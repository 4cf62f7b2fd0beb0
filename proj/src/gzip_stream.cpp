#include "wikicite/gzip_stream.hpp"

#include <zlib.h>

#include <cstring>

#include "wikicite/errors.hpp"

namespace wikicite {

namespace {
constexpr std::size_t kBufSize = 128 * 1024;
}

GzipInputBuf::GzipInputBuf(std::streambuf* src)
    : src_(src), in_buf_(kBufSize), out_buf_(kBufSize) {
    auto* zs = new z_stream();
    std::memset(zs, 0, sizeof(z_stream));
    if (inflateInit2(zs, 15 + 16) != Z_OK) {
        delete zs;
        throw ParseError("gzip: inflateInit2 failed");
    }
    zstream_ = zs;
    setg(out_buf_.data(), out_buf_.data(), out_buf_.data());
}

GzipInputBuf::~GzipInputBuf() {
    auto* zs = static_cast<z_stream*>(zstream_);
    if (zs) {
        inflateEnd(zs);
        delete zs;
    }
}

std::streambuf::int_type GzipInputBuf::underflow() {
    if (gptr() < egptr()) return traits_type::to_int_type(*gptr());
    if (stream_end_) return traits_type::eof();

    auto* zs = static_cast<z_stream*>(zstream_);
    zs->next_out = reinterpret_cast<Bytef*>(out_buf_.data());
    zs->avail_out = static_cast<uInt>(out_buf_.size());

    while (zs->avail_out == out_buf_.size()) {
        if (zs->avail_in == 0 && !src_eof_) {
            std::streamsize n = src_->sgetn(in_buf_.data(),
                                            static_cast<std::streamsize>(in_buf_.size()));
            if (n <= 0) {
                src_eof_ = true;
            } else {
                zs->next_in = reinterpret_cast<Bytef*>(in_buf_.data());
                zs->avail_in = static_cast<uInt>(n);
            }
        }
        if (zs->avail_in == 0 && src_eof_) {
            // Input exhausted before the deflate stream finished.
            throw ParseError("gzip: truncated stream");
        }
        int rc = inflate(zs, Z_NO_FLUSH);
        if (rc == Z_STREAM_END) {
            if (zs->avail_in > 0) {
                // Another gzip member follows (concatenated files).
                if (inflateReset(zs) != Z_OK) throw ParseError("gzip: inflateReset failed");
                continue;
            }
            // Peek the source for a further member before declaring EOF.
            std::streamsize n = src_->sgetn(in_buf_.data(),
                                            static_cast<std::streamsize>(in_buf_.size()));
            if (n > 0) {
                zs->next_in = reinterpret_cast<Bytef*>(in_buf_.data());
                zs->avail_in = static_cast<uInt>(n);
                if (inflateReset(zs) != Z_OK) throw ParseError("gzip: inflateReset failed");
                continue;
            }
            stream_end_ = true;
            break;
        }
        if (rc != Z_OK && rc != Z_BUF_ERROR) {
            throw ParseError(std::string("gzip: inflate error: ") +
                             (zs->msg ? zs->msg : std::to_string(rc)));
        }
    }

    std::size_t produced = out_buf_.size() - zs->avail_out;
    if (produced == 0) return traits_type::eof();
    setg(out_buf_.data(), out_buf_.data(), out_buf_.data() + produced);
    return traits_type::to_int_type(*gptr());
}

InputFile::InputFile(const std::string& path) : path_(path) {
    file_.open(path, std::ios::binary);
    if (!file_) throw ConfigError("cannot open input file: " + path);
    int b0 = file_.get();
    int b1 = file_.get();
    file_.clear();
    file_.seekg(0);
    if (b0 == 0x1f && b1 == 0x8b) {
        gz_ = std::make_unique<GzipInputBuf>(file_.rdbuf());
    }
}

std::streambuf* InputFile::buf() {
    return gz_ ? static_cast<std::streambuf*>(gz_.get()) : file_.rdbuf();
}

GzipFileWriter::GzipFileWriter(const std::string& path, int level)
    : out_buf_(kBufSize) {
    out_.open(path, std::ios::binary | std::ios::trunc);
    if (!out_) throw ConfigError("cannot open output file: " + path);
    auto* zs = new z_stream();
    std::memset(zs, 0, sizeof(z_stream));
    if (deflateInit2(zs, level, Z_DEFLATED, 15 + 16, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
        delete zs;
        throw ParseError("gzip: deflateInit2 failed");
    }
    zstream_ = zs;
}

GzipFileWriter::~GzipFileWriter() {
    try {
        close();
    } catch (...) {
    }
    auto* zs = static_cast<z_stream*>(zstream_);
    if (zs) {
        deflateEnd(zs);
        delete zs;
    }
}

void GzipFileWriter::write(const char* data, std::size_t n) {
    auto* zs = static_cast<z_stream*>(zstream_);
    zs->next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data));
    zs->avail_in = static_cast<uInt>(n);
    deflate_pending(false);
}

void GzipFileWriter::deflate_pending(bool finish) {
    auto* zs = static_cast<z_stream*>(zstream_);
    do {
        zs->next_out = reinterpret_cast<Bytef*>(out_buf_.data());
        zs->avail_out = static_cast<uInt>(out_buf_.size());
        int rc = deflate(zs, finish ? Z_FINISH : Z_NO_FLUSH);
        if (rc == Z_STREAM_ERROR) throw ParseError("gzip: deflate error");
        std::size_t produced = out_buf_.size() - zs->avail_out;
        if (produced > 0) out_.write(out_buf_.data(), static_cast<std::streamsize>(produced));
        if (finish && rc == Z_STREAM_END) break;
    } while (zs->avail_in > 0 || (finish && zs->avail_out == 0));
}

void GzipFileWriter::close() {
    if (closed_) return;
    closed_ = true;
    auto* zs = static_cast<z_stream*>(zstream_);
    zs->next_in = nullptr;
    zs->avail_in = 0;
    deflate_pending(true);
    out_.close();
}

}  // namespace wikicite
