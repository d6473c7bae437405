#include "simplets/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <sstream>
#include <type_traits>

#include "simplets/error.hpp"

namespace simplets {

namespace {

constexpr char kMagic[8] = {'S', 'I', 'M', 'P', 'L', 'E', 'T', 'S'};
constexpr std::uint32_t kVersion = 1;

class Writer {
 public:
  template <class T>
  void put(const T& v) {
    static_assert(std::is_trivially_copyable_v<T>);
    buf_.append(reinterpret_cast<const char*>(&v), sizeof v);
  }
  void put_bytes(std::string_view s) {
    put(static_cast<std::uint64_t>(s.size()));
    buf_.append(s);
  }
  void put_array(const Array2D<double>& a) {
    put(static_cast<std::int32_t>(a.nx()));
    put(static_cast<std::int32_t>(a.ny()));
    put(static_cast<std::int32_t>(a.pad()));
    buf_.append(reinterpret_cast<const char*>(a.raw().data()), a.bytes());
  }
  const std::string& data() const { return buf_; }

 private:
  std::string buf_;
};

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  template <class T>
  T get() {
    T v;
    need(sizeof v);
    std::memcpy(&v, data_.data() + pos_, sizeof v);
    pos_ += sizeof v;
    return v;
  }
  std::string get_bytes() {
    const auto n = get<std::uint64_t>();
    need(n);
    std::string s(data_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  void get_array(Array2D<double>& a) {
    const auto nx = get<std::int32_t>();
    const auto ny = get<std::int32_t>();
    const auto pad = get<std::int32_t>();
    if (nx != a.nx() || ny != a.ny() || pad != a.pad()) {
      throw CheckpointError("checkpoint array shape does not match the mesh");
    }
    need(a.bytes());
    std::memcpy(a.raw().data(), data_.data() + pos_, a.bytes());
    pos_ += a.bytes();
  }
  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) throw CheckpointError("checkpoint is truncated");
  }
  std::string_view data_;
  std::size_t pos_ = 0;
};

template <class Fn>
void each_array(FieldSet& f, Fn&& fn) {
  for (int k = 0; k < 3; ++k) {
    State& s = f.buffer(k);
    fn(s.p);
    fn(s.T);
    fn(s.rho);
    fn(s.u);
    fn(s.v);
  }
  for (int k = 0; k < 2; ++k) {
    fn(f.diff_buffer(k).gamma);
    fn(f.diff_buffer(k).gamma_l);
  }
  if (f.has_planes()) {
    fn(f.planes().u);
    fn(f.planes().v);
    fn(f.planes().T);
  }
}

}  // namespace

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

void write_checkpoint(const std::filesystem::path& path, const std::string& config_text, double time,
                      long step, const FieldSet& fields) {
  Writer w;
  for (char c : kMagic) w.put(c);
  w.put(kVersion);
  w.put(fnv1a(config_text));
  w.put_bytes(config_text);
  w.put(time);
  w.put(static_cast<std::int64_t>(step));
  for (int r : fields.roles()) w.put(static_cast<std::int32_t>(r));
  w.put(static_cast<std::int32_t>(fields.nx()));
  w.put(static_cast<std::int32_t>(fields.ny()));
  w.put(static_cast<std::uint8_t>(fields.has_planes() ? 1 : 0));
  // each_array needs mutable access only to share the traversal order.
  each_array(const_cast<FieldSet&>(fields), [&](const Array2D<double>& a) { w.put_array(a); });
  const std::uint64_t sum = fnv1a(w.data());

  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(w.data().data(), static_cast<std::streamsize>(w.data().size()));
    out.write(reinterpret_cast<const char*>(&sum), sizeof sum);
    if (!out) throw IoError("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move checkpoint into place: " + ec.message());
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string data = ss.str();

  if (data.size() < sizeof kMagic + sizeof(std::uint64_t)) {
    throw CheckpointError("checkpoint is truncated");
  }
  if (std::memcmp(data.data(), kMagic, sizeof kMagic) != 0) {
    throw CheckpointError("not a checkpoint file");
  }
  const std::string_view body(data.data(), data.size() - sizeof(std::uint64_t));
  std::uint64_t stored = 0;
  std::memcpy(&stored, data.data() + body.size(), sizeof stored);

  Reader r(body);
  for (std::size_t k = 0; k < sizeof kMagic; ++k) r.get<char>();
  const auto version = r.get<std::uint32_t>();
  if (version != kVersion) {
    throw CheckpointError("unsupported checkpoint version " + std::to_string(version));
  }
  if (fnv1a(body) != stored) throw CheckpointError("checkpoint checksum mismatch");

  Checkpoint cp;
  cp.config_hash = r.get<std::uint64_t>();
  cp.config_text = r.get_bytes();
  if (fnv1a(cp.config_text) != cp.config_hash) {
    throw CheckpointError("checkpoint configuration hash mismatch");
  }
  cp.time = r.get<double>();
  cp.step = static_cast<long>(r.get<std::int64_t>());
  std::array<int, 4> roles{};
  for (int& x : roles) x = r.get<std::int32_t>();
  const auto nx = r.get<std::int32_t>();
  const auto ny = r.get<std::int32_t>();
  const auto planes = r.get<std::uint8_t>();
  if (nx < 1 || ny < 1 || planes > 1) throw CheckpointError("checkpoint header is corrupt");
  cp.fields = FieldSet(nx, ny, planes == 1);
  try {
    cp.fields.set_roles(roles);
  } catch (const UsageError&) {
    throw CheckpointError("checkpoint buffer roles are corrupt");
  }
  each_array(cp.fields, [&](Array2D<double>& a) { r.get_array(a); });
  if (r.remaining() != 0) throw CheckpointError("trailing bytes in checkpoint");
  return cp;
}

void check_config_hash(const Checkpoint& cp, const std::string& config_text) {
  if (fnv1a(config_text) != cp.config_hash) {
    throw ConfigError("configuration does not match the one stored in the checkpoint");
  }
}

}  // namespace simplets
