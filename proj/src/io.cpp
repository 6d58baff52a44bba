#include "plasmoscan/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "plasmoscan/errors.hpp"

namespace plasmoscan::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string &path) {
  std::ofstream out(path, std::ios::binary);  // binary: no CRLF translation anywhere
  if (!out) throw ConfigError("cannot open output file: " + path);
  return out;
}

}  // namespace

void write_text_file(const std::string &path, const std::string &content) {
  std::ofstream out = open_out(path);
  out << content;
}

void write_scan_image_csv(const std::string &path, const ScanImage &image) {
  std::ofstream out = open_out(path);
  out << "x_nm,y_nm,signal\n";
  for (int iy = 0; iy < image.grid.ny; ++iy)
    for (int ix = 0; ix < image.grid.nx; ++ix)
      out << format_double(image.grid.x_of(ix)) << ',' << format_double(image.grid.y_of(iy))
          << ',' << format_double(image.at(ix, iy)) << '\n';
}

void write_map_csv(const std::string &path, const ScanGridSpec &grid,
                   const std::string &value_header, const std::vector<double> &values) {
  std::ofstream out = open_out(path);
  out << "x_nm,y_nm," << value_header << '\n';
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix)
      out << format_double(grid.x_of(ix)) << ',' << format_double(grid.y_of(iy)) << ','
          << format_double(values[std::size_t(iy) * grid.nx + ix]) << '\n';
}

void write_profile_csv(const std::string &path, const std::string &x_header,
                       const std::string &y_header,
                       const std::vector<double> &x, const std::vector<double> &y) {
  std::ofstream out = open_out(path);
  out << x_header << ',' << y_header << '\n';
  for (std::size_t i = 0; i < x.size(); ++i)
    out << format_double(x[i]) << ',' << format_double(y[i]) << '\n';
}

void write_focal_field_csv(const std::string &path, const FocalField &field) {
  std::ofstream out = open_out(path);
  out << "x_nm,y_nm,ex_re,ex_im,ey_re,ey_im,ez_re,ez_im\n";
  for (int iy = 0; iy < field.grid.ny; ++iy)
    for (int ix = 0; ix < field.grid.nx; ++ix) {
      const CVec3 &e = field.at(ix, iy);
      out << format_double(field.grid.x_of(ix)) << ',' << format_double(field.grid.y_of(iy))
          << ',' << format_double(e.x.real()) << ',' << format_double(e.x.imag()) << ','
          << format_double(e.y.real()) << ',' << format_double(e.y.imag()) << ','
          << format_double(e.z.real()) << ',' << format_double(e.z.imag()) << '\n';
    }
}

void write_focal_intensity_csv(const std::string &path, const FocalField &field) {
  std::ofstream out = open_out(path);
  out << "x_nm,y_nm,intensity\n";
  for (int iy = 0; iy < field.grid.ny; ++iy)
    for (int ix = 0; ix < field.grid.nx; ++ix)
      out << format_double(field.grid.x_of(ix)) << ',' << format_double(field.grid.y_of(iy))
          << ',' << format_double(field.intensity[std::size_t(iy) * field.grid.nx + ix])
          << '\n';
}

void write_spectrum_csv(const std::string &path,
                        const std::vector<SpectrumPoint> &long_axis,
                        const std::vector<SpectrumPoint> &short_axis) {
  std::ofstream out = open_out(path);
  out << "wavelength_nm,sigma_ext_long_nm2,sigma_sca_long_nm2,sigma_abs_long_nm2,"
         "sigma_ext_short_nm2,sigma_sca_short_nm2,sigma_abs_short_nm2\n";
  for (std::size_t i = 0; i < long_axis.size(); ++i) {
    const CrossSections &l = long_axis[i].cs;
    const CrossSections &s = short_axis[i].cs;
    out << format_double(long_axis[i].wavelength_nm) << ',' << format_double(l.sigma_ext_nm2)
        << ',' << format_double(l.sigma_sca_nm2) << ',' << format_double(l.sigma_abs_nm2) << ','
        << format_double(s.sigma_ext_nm2) << ',' << format_double(s.sigma_sca_nm2) << ','
        << format_double(s.sigma_abs_nm2) << '\n';
  }
}

void write_g2_csv(const std::string &path, const G2Histogram &hist,
                  const std::vector<double> &theory) {
  std::ofstream out = open_out(path);
  const bool with_theory = theory.size() == hist.tau_ns.size();
  out << (with_theory ? "tau_ns,g2,sigma,g2_theory\n" : "tau_ns,g2,sigma\n");
  for (std::size_t i = 0; i < hist.tau_ns.size(); ++i) {
    out << format_double(hist.tau_ns[i]) << ',' << format_double(hist.g2[i]) << ','
        << format_double(hist.sigma[i]);
    if (with_theory) out << ',' << format_double(theory[i]);
    out << '\n';
  }
}

void write_stream_csv(const std::string &path, const PhotonStream &stream) {
  std::ofstream out = open_out(path);
  out << "timestamp_ns\n";
  for (double t : stream.timestamps_ns) out << format_double(t) << '\n';
}

void write_counts_csv(const std::string &path, const CountImage &image) {
  std::ofstream out = open_out(path);
  out << "x_nm,y_nm,counts\n";
  for (int iy = 0; iy < image.grid.ny; ++iy)
    for (int ix = 0; ix < image.grid.nx; ++ix)
      out << format_double(image.grid.x_of(ix)) << ',' << format_double(image.grid.y_of(iy))
          << ',' << image.counts[std::size_t(iy) * image.grid.nx + ix] << '\n';
}

std::pair<std::vector<double>, std::vector<double>> image_cross_section(const ScanImage &image,
                                                                        Axis axis) {
  std::vector<double> depth(image.pixels.size());
  for (std::size_t i = 0; i < image.pixels.size(); ++i)
    depth[i] = image.channel == Channel::Transmission ? image.background - image.pixels[i]
                                                      : image.pixels[i] - image.background;
  const std::size_t ipk = std::max_element(depth.begin(), depth.end()) - depth.begin();
  const int px = int(ipk % image.grid.nx);
  const int py = int(ipk / image.grid.nx);

  std::vector<double> pos, val;
  if (axis == Axis::X) {
    for (int ix = 0; ix < image.grid.nx; ++ix) {
      pos.push_back(image.grid.x_of(ix));
      val.push_back(image.at(ix, py));
    }
  } else {
    for (int iy = 0; iy < image.grid.ny; ++iy) {
      pos.push_back(image.grid.y_of(iy));
      val.push_back(image.at(px, iy));
    }
  }
  return {pos, val};
}

}  // namespace plasmoscan::io
