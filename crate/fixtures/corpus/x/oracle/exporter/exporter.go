// Package exporter streams tallied prices to external subscribers. It is
// operator tooling: no consensus path calls into it.
package exporter

// Stream fans prices out to the subscriber channels.
func Stream(prices []int64, subscribers []chan int64) {
	for _, p := range prices {
		for _, sub := range subscribers {
			go func(c chan int64, v int64) { c <- v }(sub, p) // decoy cosmos/goroutine: operator tooling (fires only in blacklist mode)
		}
	}
}

// Pump forwards one price if a subscriber is ready.
func Pump(in chan int64, out chan int64) {
	select { // decoy cosmos/goroutine: operator tooling (fires only in blacklist mode)
	case v := <-in:
		out <- v
	default:
	}
}
