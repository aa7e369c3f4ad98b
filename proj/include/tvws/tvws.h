/*
 * tvws.h - C interface of the TV white space availability engine.
 *
 * All objects are opaque handles created and released through this API.
 * Functions returning tvws_status report failures through the code and a
 * per-thread message available from tvws_last_error(). Strings returned
 * through `char** out` parameters are heap allocated and must be released
 * with tvws_string_free().
 *
 * Status codes double as process exit codes for the command-line tool.
 */
#ifndef TVWS_H
#define TVWS_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(TVWS_BUILDING_LIBRARY)
#    define TVWS_API __declspec(dllexport)
#  else
#    define TVWS_API __declspec(dllimport)
#  endif
#else
#  define TVWS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tvws_status {
  TVWS_OK = 0,
  TVWS_ERR_USAGE = 2,    /* invalid argument or unparseable user input */
  TVWS_ERR_DATA = 3,     /* missing or invalid data file */
  TVWS_ERR_INTERNAL = 4  /* internal invariant violated */
} tvws_status;

typedef enum tvws_mode {
  TVWS_MODE_DISK = 0,   /* keep-out disks, any CR power */
  TVWS_MODE_RASTER = 1  /* exact coverage rasters, zero-power limit only */
} tvws_mode;

typedef enum tvws_format { TVWS_FORMAT_CSV = 0, TVWS_FORMAT_JSON = 1, TVWS_FORMAT_SVG = 2 } tvws_format;

typedef enum tvws_set { TVWS_SET_VACANT = 0, TVWS_SET_OCCUPIED = 1, TVWS_SET_FILTERED = 2 } tvws_set;

typedef enum tvws_preset { TVWS_PRESET_NONE = 0, TVWS_PRESET_UK81 = 1, TVWS_PRESET_MANCHESTER = 2 } tvws_preset;

typedef struct tvws_plan tvws_plan;
typedef struct tvws_dataset tvws_dataset;
typedef struct tvws_result tvws_result;

typedef struct tvws_options {
  double alpha;         /* pathloss exponent, >= 1 (default 3) */
  double beta_th;       /* protection ratio, linear, > 0 (default 1) */
  tvws_mode mode;       /* default TVWS_MODE_DISK */
  int strict_excluded;  /* excluded channels also block their neighbours */
  unsigned workers;     /* threads for batch, sweep and grid (default 1) */
} tvws_options;

typedef struct tvws_synth_options {
  tvws_preset preset;   /* a preset overrides n, region, cell size and irregularity */
  unsigned long long seed;
  int n;
  double min_e, min_n, max_e, max_n;
  double cell_size_m;
  double irregularity;
  double alpha;
  double beta_th;
  int locations;        /* labelled locations written to locations.csv */
} tvws_synth_options;

TVWS_API const char* tvws_version(void);
/* Message of the last failure on the calling thread; "" after success. */
TVWS_API const char* tvws_last_error(void);
TVWS_API void tvws_string_free(char* s);

TVWS_API void tvws_options_init(tvws_options* opt);
TVWS_API void tvws_synth_options_init(tvws_synth_options* opt);

/* Input parsing. Grid references ("SP 513 061") or "easting,northing". */
TVWS_API tvws_status tvws_parse_location(const char* text, double* easting, double* northing);
/* "100mW", "2W", "4 kW", "0.1" (watts). */
TVWS_API tvws_status tvws_parse_power(const char* text, double* watts);
/* "5km", "250m", "250" (meters). */
TVWS_API tvws_status tvws_parse_length(const char* text, double* meters);
TVWS_API tvws_status tvws_format_gridref(double easting, double northing, int digits, char** out);

/* Channel plans. Plan file errors are TVWS_ERR_DATA. */
TVWS_API tvws_status tvws_plan_default(tvws_plan** out);
TVWS_API tvws_status tvws_plan_parse(const char* text, tvws_plan** out);
TVWS_API tvws_status tvws_plan_load(const char* path, tvws_plan** out);
TVWS_API void tvws_plan_free(tvws_plan* plan);
TVWS_API tvws_status tvws_plan_hash(const tvws_plan* plan, char** out);
TVWS_API size_t tvws_plan_interleaved_count(const tvws_plan* plan);

/* Transmitter database plus coverage from `<coverage_dir>/<id>.asc|.disk`. */
TVWS_API tvws_status tvws_dataset_load(const char* txdb_path, const char* coverage_dir, tvws_mode mode,
                                       tvws_dataset** out);
TVWS_API void tvws_dataset_free(tvws_dataset* ds);
TVWS_API size_t tvws_dataset_size(const tvws_dataset* ds);
TVWS_API size_t tvws_dataset_warning_count(const tvws_dataset* ds);
/* Borrowed pointer, valid while the dataset lives; NULL when out of range. */
TVWS_API const char* tvws_dataset_warning(const tvws_dataset* ds, size_t i);
/* Rewrites `<id>.disk` for every transmitter from its raster. */
TVWS_API tvws_status tvws_write_disk_cache(const char* txdb_path, const char* coverage_dir, size_t* written);

/* Single-location availability. opt->mode must match the mode the dataset
 * was loaded with; raster mode only accepts power 0. */
TVWS_API tvws_status tvws_query(const tvws_dataset* ds, const tvws_plan* plan, const tvws_options* opt,
                                double easting, double northing, double power_watts, tvws_result** out);
TVWS_API void tvws_result_free(tvws_result* r);
TVWS_API size_t tvws_result_rho(const tvws_result* r);
/* Copies up to `cap` ascending channel numbers into buf; returns the set size. */
TVWS_API size_t tvws_result_channels(const tvws_result* r, tvws_set which, int* buf, size_t cap);
TVWS_API double tvws_result_max_contiguous_mhz(const tvws_result* r);
/* Ids of the transmitters protecting `channel` here, ';'-separated. */
TVWS_API tvws_status tvws_result_blockers(const tvws_result* r, int channel, char** out);
TVWS_API tvws_status tvws_result_emit(const tvws_result* r, const char* label, tvws_format fmt, char** out);

/* Multi-location report from a locations file (`label,location` per line).
 * CSV or JSON; output is identical for any worker count. */
TVWS_API tvws_status tvws_batch(const tvws_dataset* ds, const tvws_plan* plan, const tvws_options* opt,
                                const char* locations_text, double power_watts, tvws_format fmt, char** out);

/* Availability against CR power (disk mode). CSV or JSON, ascending power. */
TVWS_API tvws_status tvws_sweep(const tvws_dataset* ds, const tvws_plan* plan, const tvws_options* opt,
                                double easting, double northing, const double* powers, size_t count,
                                tvws_format fmt, char** out);

/* rho over a region as an ESRI ASCII grid (disk mode). */
TVWS_API tvws_status tvws_grid(const tvws_dataset* ds, const tvws_plan* plan, const tvws_options* opt,
                               double min_e, double min_n, double max_e, double max_n, double cell_size_m,
                               double power_watts, int filtered, char** out);

/* Writes a synthetic fixture tree (txdb.csv, locations.csv, coverage/) to out_dir. */
TVWS_API tvws_status tvws_synth(const tvws_synth_options* opt, const tvws_plan* plan, const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif /* TVWS_H */
