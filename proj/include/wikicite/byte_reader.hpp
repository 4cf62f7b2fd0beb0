#pragma once

#include <cstdint>
#include <cstring>
#include <streambuf>
#include <vector>

namespace wikicite {

// Buffered byte puller over a streambuf. Tracks the absolute byte offset and
// the 1-based line number so parsers can report error positions without any
// bookkeeping of their own.
class ByteReader {
public:
    static constexpr int kEof = -1;

    explicit ByteReader(std::streambuf* src, std::size_t buffer_size = 256 * 1024)
        : src_(src), buf_(buffer_size) {}

    ByteReader(const ByteReader&) = delete;
    ByteReader& operator=(const ByteReader&) = delete;

    int get() {
        if (pos_ == end_ && !fill()) return kEof;
        int c = buf_[pos_++];
        if (c == '\n') ++line_;
        return c;
    }

    int peek() {
        if (pos_ == end_ && !fill()) return kEof;
        return buf_[pos_];
    }

    bool eof() { return peek() == kEof; }

    // Bytes consumed so far (offset of the next unread byte).
    std::uint64_t offset() const { return base_ + pos_; }

    std::uint64_t line() const { return line_; }

private:
    bool fill() {
        base_ += end_;
        pos_ = end_ = 0;
        std::streamsize n = src_->sgetn(reinterpret_cast<char*>(buf_.data()),
                                        static_cast<std::streamsize>(buf_.size()));
        if (n <= 0) return false;
        end_ = static_cast<std::size_t>(n);
        return true;
    }

    std::streambuf* src_;
    std::vector<unsigned char> buf_;
    std::size_t pos_ = 0;
    std::size_t end_ = 0;
    std::uint64_t base_ = 0;
    std::uint64_t line_ = 1;
};

}  // namespace wikicite
