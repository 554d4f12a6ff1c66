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

example!(distances);
example!(cost_functions);
example!(adaptive_gap);
example!(corruption_models);
example!(simulate_oblivious);
example!(imitate_oblivious);
example!(run_experiment);
