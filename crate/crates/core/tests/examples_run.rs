// Every example must run to completion.

macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!("../examples/", stringify!($name), ".rs"));

            #[test]
            fn runs() {
                main().unwrap();
            }
        }
    };
}

example!(bessel_zeros);
example!(circle_regularization);
example!(inflating_disk);
example!(polygon_spectrum);
example!(product_space_and_cylinder);
example!(report_formats);
example!(square_energy);
example!(square_vs_polygon);
