//! Shared numerical kernels: adaptive quadrature and incomplete gamma
//! functions.

pub mod gamma;
pub mod quad;

/// Exact factorials as `f64`. Entries up to 22! are exactly representable;
/// the table stops well inside the range needed by the angular algebra
/// (designed for j ≤ 9/2, i.e. factorial arguments ≤ 15).
const FACTORIALS: [f64; 31] = [
    1.0,
    1.0,
    2.0,
    6.0,
    24.0,
    120.0,
    720.0,
    5040.0,
    40320.0,
    362880.0,
    3628800.0,
    39916800.0,
    479001600.0,
    6227020800.0,
    87178291200.0,
    1307674368000.0,
    20922789888000.0,
    355687428096000.0,
    6402373705728000.0,
    121645100408832000.0,
    2432902008176640000.0,
    51090942171709440000.0,
    1124000727777607680000.0,
    25852016738884976640000.0,
    620448401733239439360000.0,
    15511210043330985984000000.0,
    403291461126605635584000000.0,
    10888869450418352160768000000.0,
    304888344611713860501504000000.0,
    8841761993739701954543616000000.0,
    265252859812191058636308480000000.0,
];

/// n! as `f64`; panics if `n` exceeds the table (far beyond the j ≤ 9/2
/// design range of the angular module).
pub fn factorial(n: u32) -> f64 {
    FACTORIALS[n as usize]
}

#[cfg(test)]
mod tests {
    use super::factorial;

    #[test]
    fn factorial_table_consistent() {
        for n in 1..=30u32 {
            assert_eq!(factorial(n), factorial(n - 1) * n as f64);
        }
        assert_eq!(factorial(0), 1.0);
        assert_eq!(factorial(15), 1_307_674_368_000.0);
    }
}
