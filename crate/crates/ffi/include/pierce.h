#ifndef PIERCE_H
#define PIERCE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PierceStatus {
  PIERCE_STATUS_OK = 0,
  PIERCE_STATUS_NULL_POINTER = 1,
  PIERCE_STATUS_INVALID_UTF8 = 2,
  PIERCE_STATUS_PARSE = 3,
  PIERCE_STATUS_OUT_OF_DOMAIN = 4,
  PIERCE_STATUS_INSUFFICIENT_PREFIX = 5,
  PIERCE_STATUS_INVALID_RULE = 6,
  PIERCE_STATUS_INVALID_PARAMETER = 7,
  PIERCE_STATUS_INVALID_DIGITS = 8,
  PIERCE_STATUS_PRECISION_EXHAUSTED = 9,
  PIERCE_STATUS_OVERFLOW = 10,
  PIERCE_STATUS_PANIC = 11,
  PIERCE_STATUS_OTHER = 12,
} PierceStatus;

/**
 * Opaque digit sequence.
 */
typedef struct PierceDigits PierceDigits;

/**
 * Opaque intercalation rule.
 */
typedef struct PierceRule PierceRule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or NULL. Valid until the
 * next failing call on the same thread.
 */
const char *pierce_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void pierce_string_free(char *s);

/**
 * Parses `"3,8,21,..."`; `"0"` is the empty expansion of zero.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PierceStatus pierce_digits_parse(const char *text, struct PierceDigits **out);

/**
 * Digits of the rational `"p/q"` in [0, 1].
 *
 * # Safety
 * `rational` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PierceStatus pierce_digits_encode(const char *rational, struct PierceDigits **out);

/**
 * First `n` digits with growth rate `alpha` (a rational or `"inf"`).
 * `precision_bits` of 0 selects the default.
 *
 * # Safety
 * `alpha` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PierceStatus pierce_digits_construct(const char *alpha,
                                          size_t n,
                                          uint32_t precision_bits,
                                          struct PierceDigits **out);

/**
 * # Safety
 * `digits` must be a handle from this library or NULL.
 */
void pierce_digits_free(struct PierceDigits *digits);

/**
 * Number of stored digits.
 *
 * # Safety
 * `digits` must be a valid handle and `out` a valid pointer.
 */
enum PierceStatus pierce_digits_len(const struct PierceDigits *digits, size_t *out);

/**
 * Whether the sequence ends (as opposed to being an extendable prefix).
 *
 * # Safety
 * `digits` must be a valid handle and `out` a valid pointer.
 */
enum PierceStatus pierce_digits_is_terminated(const struct PierceDigits *digits, bool *out);

/**
 * Comma-separated form, with `,...` on extendable prefixes.
 *
 * # Safety
 * `digits` must be a valid handle and `out` a valid pointer.
 */
enum PierceStatus pierce_digits_to_string(const struct PierceDigits *digits, char **out);

/**
 * Exact value `"p/q"` of a terminated sequence.
 *
 * # Safety
 * `digits` must be a valid handle and `out` a valid pointer.
 */
enum PierceStatus pierce_digits_decode(const struct PierceDigits *digits, char **out);

/**
 * Fundamental interval as `{"generator","left","right","leftOpen","rightOpen"}`.
 *
 * # Safety
 * `digits` must be a valid handle and `out` a valid pointer.
 */
enum PierceStatus pierce_digits_interval_json(const struct PierceDigits *digits, char **out);

/**
 * Parses `"julian"`, `"gregorian"` or comma-separated terms.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PierceStatus pierce_rule_parse(const char *text, struct PierceRule **out);

/**
 * The rule whose terms are the given digits.
 *
 * # Safety
 * `digits` must be a valid handle and `out` a valid pointer.
 */
enum PierceStatus pierce_rule_from_digits(const struct PierceDigits *digits,
                                          struct PierceRule **out);

/**
 * # Safety
 * `rule` must be a handle from this library or NULL.
 */
void pierce_rule_free(struct PierceRule *rule);

/**
 * # Safety
 * `rule` must be a valid handle and `out` a valid pointer.
 */
enum PierceStatus pierce_rule_is_leap(const struct PierceRule *rule, uint64_t year, bool *out);

/**
 * Leap years among `1..=through`, by the floor-sum formula.
 *
 * # Safety
 * `rule` must be a valid handle and `out` a valid pointer.
 */
enum PierceStatus pierce_rule_count(const struct PierceRule *rule, uint64_t through, uint64_t *out);

/**
 * Trajectory CSV for growth rate `alpha`; see the `trajectory` command.
 * `precision_bits` of 0 selects the default.
 *
 * # Safety
 * `alpha` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PierceStatus pierce_trajectory_csv(const char *alpha,
                                        size_t rmax,
                                        size_t guard_digits,
                                        uint32_t precision_bits,
                                        char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PIERCE_H */
