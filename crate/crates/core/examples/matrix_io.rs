//! Matrix text files: write, read back bit-exactly, and report bad input by line.

use tcongruence::matio::{read_matrix_market, read_matrix_str, write_matrix_string};
use tcongruence::Mat;

fn main() -> Result<(), tcongruence::Error> {
    let m = Mat::from_rows(&[[0.1, 1.0 / 3.0, -2.5e-310], [1e300, -0.0, 42.0]])?;
    let text = write_matrix_string(&m);
    print!("{text}");
    let back = read_matrix_str(&text)?;
    let exact = back.as_slice().iter().zip(m.as_slice()).all(|(a, b)| a.to_bits() == b.to_bits());
    println!("bit-exact round trip: {exact}");

    for bad in ["2 2\n1 2\n3\n", "% c\n1 1\nNaN\n", "1 1\n1\n2\n", "2 x\n"] {
        println!("{:?} -> {}", bad, read_matrix_str(bad).unwrap_err());
    }

    let mm = "%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n";
    println!("Matrix Market (column-major values):\n{:?}", read_matrix_market(mm.as_bytes())?);
    Ok(())
}
