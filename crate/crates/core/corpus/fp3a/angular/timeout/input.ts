import { Component, OnInit } from '@angular/core';

@Component({ selector: 'app-splash', template: '' })
export class SplashComponent implements OnInit {
  visible = true;

  ngOnInit() {
    setTimeout(() => (this.visible = false), 2000);
  }
}
