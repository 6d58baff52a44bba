#pragma once

#include <string>
#include <vector>

#include "plasmoscan/focal_field.hpp"
#include "plasmoscan/imaging.hpp"
#include "plasmoscan/photon.hpp"
#include "plasmoscan/polarizability.hpp"

// CSV emitters. All numbers are written with "%.17g" so identical runs
// produce byte-identical files.
namespace plasmoscan::io {

std::string format_double(double v);

void write_scan_image_csv(const std::string &path, const ScanImage &image);
void write_map_csv(const std::string &path, const ScanGridSpec &grid,
                   const std::string &value_header, const std::vector<double> &values);
void write_profile_csv(const std::string &path, const std::string &x_header,
                       const std::string &y_header,
                       const std::vector<double> &x, const std::vector<double> &y);
void write_focal_field_csv(const std::string &path, const FocalField &field);
void write_focal_intensity_csv(const std::string &path, const FocalField &field);
void write_spectrum_csv(const std::string &path,
                        const std::vector<SpectrumPoint> &long_axis,
                        const std::vector<SpectrumPoint> &short_axis);
void write_g2_csv(const std::string &path, const G2Histogram &hist,
                  const std::vector<double> &theory);
void write_stream_csv(const std::string &path, const PhotonStream &stream);
void write_counts_csv(const std::string &path, const CountImage &image);
void write_text_file(const std::string &path, const std::string &content);

/// Cross-section through the response extremum along one axis, as
/// (position_nm, signal) pairs.
std::pair<std::vector<double>, std::vector<double>> image_cross_section(const ScanImage &image,
                                                                        Axis axis);

}  // namespace plasmoscan::io
