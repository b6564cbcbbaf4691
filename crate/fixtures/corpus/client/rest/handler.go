// Package rest serves read-only queries over HTTP for block explorers.
package rest

import crand "crypto/rand"

// ServeQueries answers each query on its own goroutine; latency matters
// more than ordering here.
func ServeQueries(queries chan string, results chan string) {
	go func() { // decoy cosmos/goroutine: query path, not consensus
		for q := range queries {
			results <- q
		}
	}()
}

// SummarizeParams flattens request parameters for the access log.
func SummarizeParams(params map[string]string) string {
	out := ""
	for key, value := range params { // decoy cosmos/map-iteration: log line ordering is cosmetic
		out += key + "=" + value + ";"
	}
	return out
}

// SessionToken draws a random token for a browser session.
func SessionToken() []byte {
	buf := make([]byte, 16)
	_, _ = crand.Read(buf) // decoy cosmos/unsafe-package: crypto/rand is for key material, never denied
	return buf
}
