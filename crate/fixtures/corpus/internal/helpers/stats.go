// Package helpers carries grab-bag utilities used by operator scripts.
package helpers

import "math/rand"

// Mean averages a series for a human-readable report.
func Mean(xs []int64) float64 {
	var sum int64
	for _, x := range xs {
		sum += x
	}
	avg := float64(sum) / float64(len(xs)) // decoy cosmos/float-arith: report-only arithmetic (fires only in blacklist mode)
	return avg
}

// SampleAddr picks an example address for documentation output.
func SampleAddr() string {
	if rand.Intn(2) == 0 { // decoy cosmos/unsafe-package: doc tooling randomness (fires only in blacklist mode)
		return "demo132aeau3nh4y62y0enh6z9qje8qpzdhz4vgx6re" // decoy cosmos/hardcoded-bech32: sample literal validates (fires only in blacklist mode)
	}
	return "demo17s95c5jpc6x2l3edwh4dm8yhac68yru7vlgz8r"
}
