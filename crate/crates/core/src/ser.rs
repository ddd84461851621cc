use serde::Serializer;

/// Wide integers go out as decimal strings; 128-bit values do not survive
/// most JSON number parsers.
pub(crate) fn u128_str<S: Serializer>(v: &u128, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}
