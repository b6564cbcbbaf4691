// Package simulation fuzzes the state machine in CI. It deliberately embraces
// randomness: runs are seeded and never part of consensus.
package simulation

import "math/rand"

// RandomizedAmount draws a burn amount for one simulated operation.
func RandomizedAmount(r *rand.Rand, max int64) int64 {
	if max <= 0 {
		panic("simulation bounds must be positive") // decoy cosmos/block-panic: CI harness only
	}
	return r.Int63n(max) // decoy cosmos/unsafe-package: simulation is seeded and offline
}

// ShuffleAccounts permutes the account order between operations.
func ShuffleAccounts(r *rand.Rand, accounts []string) {
	r.Shuffle(len(accounts), func(i, j int) {
		accounts[i], accounts[j] = accounts[j], accounts[i]
	})
}

// SpawnWorkers runs operations concurrently to shake out data races.
func SpawnWorkers(jobs []func()) {
	for _, job := range jobs {
		go job() // decoy cosmos/goroutine: CI harness only
	}
}
