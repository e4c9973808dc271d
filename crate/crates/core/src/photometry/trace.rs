//! Trace synthesis: sample-by-sample ambient light plus the sum of every
//! approaching vehicle's headlight contribution, per channel.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;

use super::illuminance::headlight_contribution;
use super::scenario::ScenarioSpec;
use super::types::{AmbientModel, Channel, TraceSample};

/// Ambient level at time `t` under multiplicative lognormal noise.
///
/// The noise factor is exp(sigma * z - sigma^2 / 2), mean-one, so the
/// expected value equals the noise-free level; sigma = 0 returns the
/// noise-free level exactly. The model is constant in time (street
/// lighting is treated as steady), so `t` only fixes the call's place in
/// the rng stream.
pub fn ambient_lux<R: Rng + ?Sized>(model: &AmbientModel, _t: f64, rng: &mut R) -> f64 {
    let z: f64 = rng.sample(StandardNormal);
    let sigma = model.noise_sigma;
    model.mean_lux() * (sigma * z - 0.5 * sigma * sigma).exp()
}

/// Synthesizes the full two-channel trace for a scenario.
///
/// Sample k of each channel sits at t = k / sample_rate; for every
/// instant the channel-a sample is emitted before channel-b. Vehicles
/// contribute only to the channel facing their approach and only while
/// their longitudinal distance is positive. Identical seeds give
/// bit-identical traces.
pub fn synthesize_trace(scenario: &ScenarioSpec) -> Result<Vec<TraceSample>> {
    scenario.validate()?;
    let mut rng = rand::SeedableRng::seed_from_u64(scenario.seed);
    let rng: &mut ChaCha8Rng = &mut rng;

    let rate = scenario.ambient.sample_rate_hz;
    let n = scenario.samples_per_channel();
    let mut out = Vec::with_capacity(2 * n);
    for k in 0..n {
        let t = k as f64 / rate;
        for channel in Channel::BOTH {
            let mut lux = ambient_lux(&scenario.ambient, t, rng);
            for v in &scenario.vehicles {
                if v.direction.channel() != channel || t < v.entry_time_s {
                    continue;
                }
                let d = v.distance_ft_at(t);
                if d > 0.0 {
                    lux += headlight_contribution(v, d, &scenario.geometry);
                }
            }
            out.push(TraceSample { t, channel, lux });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::photometry::illuminance::illuminance_at;
    use crate::photometry::types::{Direction, VehicleClass, VehicleSpec};
    use approx::assert_relative_eq;
    use rand::SeedableRng;

    fn noise_free(ambient: AmbientModel) -> AmbientModel {
        AmbientModel {
            noise_sigma: 0.0,
            ..ambient
        }
    }

    #[test]
    fn noise_free_ambient_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let m = AmbientModel {
            base_night_lux: 0.01,
            streetlight_lux: 0.0,
            noise_sigma: 0.0,
            sample_rate_hz: 20.0,
        };
        assert_eq!(ambient_lux(&m, 0.0, &mut rng), 0.01);
        let lit = AmbientModel {
            streetlight_lux: 5.0,
            ..m
        };
        assert_eq!(ambient_lux(&lit, 3.0, &mut rng), 5.01);
    }

    #[test]
    fn noisy_ambient_mean_converges() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let m = AmbientModel {
            base_night_lux: 2.0,
            streetlight_lux: 0.0,
            noise_sigma: 0.1,
            sample_rate_hz: 20.0,
        };
        let n = 10_000;
        let mean: f64 = (0..n).map(|i| ambient_lux(&m, i as f64, &mut rng)).sum::<f64>() / n as f64;
        assert!(
            (mean - 2.0).abs() / 2.0 < 0.02,
            "sample mean {mean} strayed more than 2% from the noise-free level"
        );
    }

    #[test]
    fn empty_scene_is_constant_ambient() {
        let scenario =
            ScenarioSpec::quiet(noise_free(AmbientModel::street_lit()), 10.0, 5);
        let trace = synthesize_trace(&scenario).unwrap();
        assert_eq!(trace.len(), 2 * scenario.samples_per_channel());
        for s in &trace {
            assert_eq!(s.lux, 8.0);
        }
    }

    #[test]
    fn single_vehicle_matches_per_sample_oracle() {
        let mut scenario = ScenarioSpec::quiet(noise_free(AmbientModel::dark()), 20.0, 9);
        // wide, soft beam so the contribution grows all the way in
        let mut v = VehicleSpec::from_class(
            VehicleClass::SedanLed,
            0,
            Direction::TowardChannelA,
            45.0,
            2.0,
            660.0,
        );
        v.beam_half_angle_deg = 89.0;
        v.beam_falloff_exponent = 0.0;
        scenario.vehicles.push(v);

        let trace = synthesize_trace(&scenario).unwrap();
        let mut last_contribution = 0.0;
        for s in &trace {
            let ambient = scenario.ambient.mean_lux();
            // independent summation: ambient plus the one vehicle's lux
            let d = v.distance_ft_at(s.t);
            let expected = match s.channel {
                Channel::A if s.t >= v.entry_time_s && d > 0.0 => {
                    ambient + illuminance_at(&v, d, &scenario.geometry).unwrap()
                }
                _ => ambient,
            };
            assert_relative_eq!(s.lux, expected, max_relative = 1e-12);
            if s.channel == Channel::A && d >= 12.0 {
                let contribution = s.lux - ambient;
                assert!(
                    contribution >= last_contribution,
                    "approaching contribution must be nondecreasing (t={})",
                    s.t
                );
                last_contribution = contribution;
            }
            if s.channel == Channel::B {
                assert_eq!(s.lux, ambient, "the channel facing away stays at ambient");
            }
        }
        assert!(last_contribution > 0.0);
    }

    #[test]
    fn coincident_vehicles_superpose_exactly() {
        let mut single = ScenarioSpec::quiet(noise_free(AmbientModel::dark()), 20.0, 4);
        let v = VehicleSpec::from_class(
            VehicleClass::Suv,
            1,
            Direction::TowardChannelB,
            45.0,
            0.0,
            600.0,
        );
        single.vehicles.push(v);
        let mut double = single.clone();
        double.vehicles.push(v);

        let t1 = synthesize_trace(&single).unwrap();
        let t2 = synthesize_trace(&double).unwrap();
        let ambient = single.ambient.mean_lux();
        for (a, b) in t1.iter().zip(&t2) {
            assert_eq!(b.lux - ambient, (a.lux - ambient) * 2.0);
        }
    }

    #[test]
    fn disjoint_vehicle_sets_superpose() {
        let base = ScenarioSpec::quiet(noise_free(AmbientModel::dark()), 40.0, 4);
        let va = VehicleSpec::from_class(
            VehicleClass::SedanLed,
            0,
            Direction::TowardChannelA,
            45.0,
            1.0,
            600.0,
        );
        let vb = VehicleSpec::from_class(
            VehicleClass::Bus,
            2,
            Direction::TowardChannelB,
            45.0,
            8.0,
            500.0,
        );
        let mut only_a = base.clone();
        only_a.vehicles.push(va);
        let mut only_b = base.clone();
        only_b.vehicles.push(vb);
        let mut both = base.clone();
        both.vehicles.extend([va, vb]);

        let ambient = base.ambient.mean_lux();
        let ta = synthesize_trace(&only_a).unwrap();
        let tb = synthesize_trace(&only_b).unwrap();
        let tboth = synthesize_trace(&both).unwrap();
        for ((a, b), c) in ta.iter().zip(&tb).zip(&tboth) {
            assert_relative_eq!(
                c.lux - ambient,
                (a.lux - ambient) + (b.lux - ambient),
                max_relative = 1e-12,
                epsilon = 1e-15
            );
        }
    }

    #[test]
    fn same_seed_is_bit_identical() {
        let mut scenario = ScenarioSpec::quiet(AmbientModel::street_lit(), 30.0, 1234);
        scenario.vehicles.push(VehicleSpec::from_class(
            VehicleClass::SedanLed,
            0,
            Direction::TowardChannelA,
            45.0,
            3.0,
            660.0,
        ));
        let t1 = synthesize_trace(&scenario).unwrap();
        let t2 = synthesize_trace(&scenario).unwrap();
        assert_eq!(t1, t2);
    }

    #[test]
    fn every_sample_is_nonnegative_and_ordered() {
        let mut scenario = ScenarioSpec::quiet(AmbientModel::dark(), 25.0, 99);
        scenario.vehicles.push(VehicleSpec::from_class(
            VehicleClass::Semi,
            3,
            Direction::TowardChannelB,
            35.0,
            0.0,
            550.0,
        ));
        let trace = synthesize_trace(&scenario).unwrap();
        let mut last_t = [f64::NEG_INFINITY; 2];
        for s in &trace {
            assert!(s.lux >= 0.0);
            let idx = (s.channel == Channel::B) as usize;
            assert!(s.t > last_t[idx]);
            last_t[idx] = s.t;
        }
    }

    #[test]
    fn rejects_invalid_scenario() {
        let mut scenario = ScenarioSpec::quiet(AmbientModel::dark(), 10.0, 0);
        scenario.vehicles.push(VehicleSpec::from_class(
            VehicleClass::SedanLed,
            7, // off the road
            Direction::TowardChannelA,
            45.0,
            0.0,
            300.0,
        ));
        assert!(synthesize_trace(&scenario).is_err());
    }
}
