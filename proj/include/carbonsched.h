/* carbonsched C API: carbon-aware workload schedule simulation.
 *
 * All functions return csched_status; on failure csched_last_error() gives a
 * human-readable message for the calling thread. Handles are opaque and must
 * be released with their matching *_free function. Strings returned through
 * char** out-parameters are heap-allocated and released with
 * csched_string_free. Const char* returns borrow from the handle and stay
 * valid until it is freed.
 */
#ifndef CARBONSCHED_H
#define CARBONSCHED_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum csched_status {
  CSCHED_OK = 0,
  CSCHED_ERR_INVALID = 1, /* bad arguments, unknown names */
  CSCHED_ERR_DATA = 2,    /* malformed or insufficient input data */
  CSCHED_ERR_LIMIT = 3,   /* enumeration limit exceeded */
  CSCHED_ERR_INTERNAL = 4
} csched_status;

typedef struct csched_regions csched_regions; /* set of region intensity series */
typedef struct csched_energy csched_energy;   /* workload energy series */
typedef struct csched_result csched_result;   /* execution plan + outcome */
typedef struct csched_table csched_table;     /* benchmark result table */

const char* csched_version(void);
const char* csched_last_error(void);
void csched_string_free(char* s);

/* ---- data loading ---- */

/* Loads every *.csv in dir as one region per file (region id = file stem).
 * unit is "g_per_kwh" or "lbs_per_mwh". */
csched_status csched_regions_load_dir(const char* dir, const char* unit, csched_regions** out);

/* The seven built-in synthetic regions. start_iso may be NULL
 * (2021-01-01T00:00:00Z). */
csched_status csched_regions_synth(uint64_t seed, int days, int step_minutes,
                                   const char* start_iso, csched_regions** out);

void csched_regions_free(csched_regions* r);
int csched_regions_count(const csched_regions* r);
const char* csched_regions_id(const csched_regions* r, int index);

csched_status csched_energy_load_csv(const char* path, csched_energy** out);

/* Bundled profile by name: IF, SVM, AE or HF-SCA. */
csched_status csched_energy_profile(const char* name, int step_minutes, csched_energy** out);

void csched_energy_free(csched_energy* e);
double csched_energy_total_kwh(const csched_energy* e);
int64_t csched_energy_steps(const csched_energy* e);

/* ---- simulation ---- */

typedef struct csched_sim_params {
  const char* strategy;         /* none|fs|par|ssfts|fsfts|dpfts */
  const char* start_iso;        /* nominal start, ISO-8601 UTC, on the grid */
  int window_extra_hours;       /* scheduling slack beyond the workload */
  int checking_minutes;         /* slot length for the FtS variants */
  const char* reference_region; /* NULL = first region id */
  const char* transfer_mode;    /* "upstream" or "intraining" */
  double dataset_gb;            /* < 0 = default 0.320 */
  double kwh_per_gb;            /* < 0 = default 0.023 */
  double checkpoint_gb;         /* < 0 = default 0 */
} csched_sim_params;

csched_status csched_simulate(const csched_regions* regions, const csched_energy* energy,
                              const csched_sim_params* params, csched_result** out);

double csched_result_operational_g(const csched_result* r);
double csched_result_transfer_g(const csched_result* r);
double csched_result_total_g(const csched_result* r);
int64_t csched_result_region_switches(const csched_result* r);
int64_t csched_result_dataset_transfers(const csched_result* r);
int64_t csched_result_start_delay_minutes(const csched_result* r);
int64_t csched_result_duration_minutes(const csched_result* r);
int64_t csched_result_chosen_start_epoch(const csched_result* r);
int64_t csched_result_completion_epoch(const csched_result* r);

int64_t csched_result_segment_count(const csched_result* r);
csched_status csched_result_segment(const csched_result* r, int64_t index,
                                    int64_t* begin_epoch, int64_t* end_epoch,
                                    const char** region, int64_t* offset_begin,
                                    int64_t* offset_end);

int64_t csched_result_transfer_count(const csched_result* r);
csched_status csched_result_transfer(const csched_result* r, int64_t index, int64_t* at_epoch,
                                     const char** from_region, const char** to_region,
                                     double* emissions_g);

/* Full plan + outcome as a schema-stable JSON document. */
csched_status csched_result_to_json(const csched_result* r, char** out);

void csched_result_free(csched_result* r);

/* ---- benchmark ---- */

/* spec_json follows the documented benchmark-spec schema. */
csched_status csched_bench_run_json(const char* spec_json, csched_table** out);
csched_status csched_bench_run_file(const char* spec_path, csched_table** out);

/* The full built-in grid as a JSON spec string (seeded synthetic regions). */
csched_status csched_bench_paper_grid_spec(uint64_t seed, char** out);

int64_t csched_table_rows(const csched_table* t);

/* format: "csv", "markdown" or "json". */
csched_status csched_table_emit(const csched_table* t, const char* format, char** out);

void csched_table_free(csched_table* t);

/* ---- generation / conversion ---- */

/* Synthetic MOER CSV for explicit diurnal parameters. */
csched_status csched_gen_intensity_csv(double base, double amplitude, double phase_hours,
                                       double noise_sigma, uint64_t seed, int days,
                                       int step_minutes, const char* start_iso, char** out);

/* Synthetic MOER CSV for a named preset region ("MIL", "PAR", ...). */
csched_status csched_gen_preset_csv(const char* preset, uint64_t seed, int days,
                                    int step_minutes, const char* start_iso, char** out);

int csched_preset_count(void);
const char* csched_preset_id(int index);

/* Reads a MOER CSV in the given unit, validates regularity (interpolating
 * gaps of up to 3 steps) and returns the g/kWh CSV text. */
csched_status csched_convert_moer(const char* in_path, const char* unit, char** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CARBONSCHED_H */
