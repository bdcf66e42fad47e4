use oscil_refnum as rn;
fn main() {
    println!("J0(30)  {:.17}", rn::bessel_j(&rn::ratio(0,1), &rn::ratio(30,1)));
    println!("J13(30) {:.17}", rn::bessel_j(&rn::ratio(1,3), &rn::ratio(30,1)));
    println!("Y13(30) {:.17}", rn::bessel_y(&rn::ratio(1,3), &rn::ratio(30,1)));
    println!("J13(60) {:.17}", rn::bessel_j(&rn::ratio(1,3), &rn::ratio(60,1)));
    println!("Y0(2)   {:.17}", rn::bessel_y0(&rn::ratio(2,1)));
    println!("Y0(60)  {:.17}", rn::bessel_y0(&rn::ratio(60,1)));
}
