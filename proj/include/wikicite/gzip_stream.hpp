#pragma once

#include <fstream>
#include <memory>
#include <streambuf>
#include <string>
#include <vector>

namespace wikicite {

// Streaming gzip inflater exposed as a streambuf. Constant memory: one input
// and one output buffer regardless of file size. Concatenated gzip members
// are handled transparently.
class GzipInputBuf : public std::streambuf {
public:
    explicit GzipInputBuf(std::streambuf* src);
    ~GzipInputBuf() override;

    GzipInputBuf(const GzipInputBuf&) = delete;
    GzipInputBuf& operator=(const GzipInputBuf&) = delete;

protected:
    int_type underflow() override;

private:
    std::streambuf* src_;
    void* zstream_ = nullptr;  // z_stream*, kept opaque here
    std::vector<char> in_buf_;
    std::vector<char> out_buf_;
    bool src_eof_ = false;
    bool stream_end_ = false;
};

// Opens a dump file for reading, layering gzip decompression when the file
// starts with the gzip magic bytes. Plain files pass through untouched.
class InputFile {
public:
    explicit InputFile(const std::string& path);

    std::streambuf* buf();
    bool gzipped() const { return gz_ != nullptr; }
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::ifstream file_;
    std::unique_ptr<GzipInputBuf> gz_;
};

// Gzip file writer used by fixture generators and tooling.
class GzipFileWriter {
public:
    explicit GzipFileWriter(const std::string& path, int level = 6);
    ~GzipFileWriter();

    GzipFileWriter(const GzipFileWriter&) = delete;
    GzipFileWriter& operator=(const GzipFileWriter&) = delete;

    void write(const char* data, std::size_t n);
    void write(const std::string& s) { write(s.data(), s.size()); }
    void close();

private:
    void deflate_pending(bool finish);

    std::ofstream out_;
    void* zstream_ = nullptr;
    std::vector<char> out_buf_;
    bool closed_ = false;
};

}  // namespace wikicite
