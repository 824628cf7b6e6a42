// Copyright (c) 2026 The privflow Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

package rec;

import java.io.DataInputStream;
import java.io.IOException;

public class Loader {
  public static byte[] load(DataInputStream in) throws IOException {
    byte[] data = new byte[16];
    in.readFully(data);
    return data;
  }

  public static void main(String[] args) throws IOException {
    byte[] data = load(new DataInputStream(System.in));
    byte[] out = Ping.ping(data, 3);
    System.out.println(new String(out));
  }
}
